//! Backtracking core shared by every labeling problem.
//!
//! Each edge `uv` becomes the linear disequality
//! `Σ_{N(u)∖N(v)} ℓ − Σ_{N(v)∖N(u)} ℓ + (off_u − off_v) ≠ 0`; common
//! neighbors cancel. Search is forward checking over these sums (a value is
//! pruned once a constraint has a single unassigned variable left) with
//! conflict-directed backjumping. Objective bounds add a disjoint hitting-set
//! lower bound: a constraint that fails when every open variable takes its
//! minimum forces at least one of them upward.

use std::time::{Duration, Instant};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    NotZero,
    AtLeast(i64),
}

#[derive(Clone, Debug)]
struct Constraint {
    terms: Vec<(u32, i64)>,
    konst: i64,
    kind: Kind,
}

/// A labeling search instance over a graph.
#[derive(Clone, Debug)]
pub(crate) struct LabelProblem<'g> {
    pub graph: &'g Graph,
    /// Candidate values per vertex, sorted ascending, at most 64 each.
    pub domains: Vec<Vec<i64>>,
    /// Constant added to each vertex's neighbor sum (external boundary).
    pub sum_offsets: Vec<i64>,
    /// Vertices whose neighbor sum must reach a floor.
    pub sum_floor: Option<(i64, Vec<bool>)>,
    pub propagate: bool,
}

impl<'g> LabelProblem<'g> {
    pub fn new(graph: &'g Graph, domains: Vec<Vec<i64>>) -> Self {
        let n = graph.n();
        LabelProblem { graph, domains, sum_offsets: vec![0; n], sum_floor: None, propagate: true }
    }

    pub fn uniform(graph: &'g Graph, values: &[i64]) -> Self {
        LabelProblem::new(graph, vec![values.to_vec(); graph.n()])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Stop {
    Exhausted,
    Budget,
    Requested,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Limits {
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
}

impl Limits {
    pub fn new(max_nodes: u64, max_time: Duration) -> Self {
        Limits { max_nodes, deadline: Instant::now().checked_add(max_time) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    /// Report every solution to the callback until it returns false.
    Enumerate,
    /// Minimize the label sum; the callback sees each improving solution.
    MinWeight,
}

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub stop: Stop,
    pub nodes: u64,
    pub best: Option<Vec<i64>>,
}

struct Frame {
    var: usize,
    tried: u64,
    cur: Option<u32>,
    pruned: Vec<(usize, u64)>,
    conf: BitSet,
}

struct Engine<'p> {
    n: usize,
    degree: Vec<usize>,
    vals: &'p [Vec<i64>],
    cons: Vec<Constraint>,
    occ: Vec<Vec<(u32, i64)>>,
    propagate: bool,

    live: Vec<u64>,
    value: Vec<i64>,
    assigned: Vec<bool>,
    depth_of: Vec<usize>,
    n_assigned: usize,
    weight: i64,

    partial: Vec<i64>,
    open: Vec<u32>,
    open_ids: Vec<u64>,
    open_coef: Vec<i64>,

    /// Depths responsible for each pruned value, by variable and value index.
    why: Vec<Vec<BitSet>>,
    root_live: Vec<u64>,
    scratch: BitSet,
    frames: Vec<Frame>,
    spare: Vec<Frame>,

    weight_cap: Option<i64>,
    stamp: Vec<u32>,
    stamp_gen: u32,

    nodes: u64,
    limits: Limits,
}

pub(crate) fn search(
    problem: &LabelProblem<'_>,
    goal: Goal,
    weight_cap: Option<i64>,
    limits: Limits,
    on_solution: &mut dyn FnMut(&[i64]) -> bool,
) -> Result<Outcome> {
    let g = problem.graph;
    let n = g.n();
    if problem.domains.len() != n || problem.sum_offsets.len() != n {
        return Err(Error::Precondition("problem arrays do not match the graph".into()));
    }
    for (v, d) in problem.domains.iter().enumerate() {
        if d.len() > 64 {
            return Err(Error::Precondition(format!("domain of vertex {v} exceeds 64 values")));
        }
        if d.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!("domain of vertex {v} is not strictly ascending")));
        }
    }
    let cons = build_constraints(problem);
    let mut occ = vec![Vec::new(); n];
    for (cid, c) in cons.iter().enumerate() {
        for &(var, coef) in &c.terms {
            occ[var as usize].push((cid as u32, coef));
        }
    }
    let live: Vec<u64> = problem
        .domains
        .iter()
        .map(|d| if d.len() == 64 { u64::MAX } else { (1u64 << d.len()) - 1 })
        .collect();
    let mut eng = Engine {
        n,
        degree: (0..n).map(|v| g.degree(v)).collect(),
        vals: &problem.domains,
        partial: vec![0; cons.len()],
        open: cons.iter().map(|c| c.terms.len() as u32).collect(),
        open_ids: cons.iter().map(|c| c.terms.iter().map(|t| t.0 as u64).sum()).collect(),
        open_coef: cons.iter().map(|c| c.terms.iter().map(|t| t.1).sum()).collect(),
        cons,
        occ,
        propagate: problem.propagate,
        live,
        value: vec![0; n],
        assigned: vec![false; n],
        depth_of: vec![usize::MAX; n],
        n_assigned: 0,
        weight: 0,
        why: problem.domains.iter().map(|d| vec![BitSet::new(n); d.len()]).collect(),
        root_live: Vec::new(),
        scratch: BitSet::new(n),
        frames: Vec::with_capacity(n),
        spare: Vec::new(),
        weight_cap,
        stamp: vec![0; n],
        stamp_gen: 0,
        nodes: 0,
        limits,
    };
    let mut best = None;
    let stop = eng.run(goal, &mut best, on_solution);
    Ok(Outcome { stop, nodes: eng.nodes, best })
}

fn build_constraints(p: &LabelProblem<'_>) -> Vec<Constraint> {
    let g = p.graph;
    let mut out = Vec::with_capacity(g.edge_count());
    for &(u, v) in g.edges() {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                terms.push((a[i] as u32, 1));
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                terms.push((b[j] as u32, -1));
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        out.push(Constraint { terms, konst: p.sum_offsets[u] - p.sum_offsets[v], kind: Kind::NotZero });
    }
    if let Some((floor, which)) = &p.sum_floor {
        for v in (0..g.n()).filter(|&v| which[v]) {
            let terms = g.neighbors(v).iter().map(|&w| (w as u32, 1)).collect();
            out.push(Constraint { terms, konst: p.sum_offsets[v], kind: Kind::AtLeast(*floor) });
        }
    }
    out
}

impl Engine<'_> {
    fn run(&mut self, goal: Goal, best: &mut Option<Vec<i64>>, on_solution: &mut dyn FnMut(&[i64]) -> bool) -> Stop {
        if !self.root_filter() {
            return Stop::Exhausted;
        }
        if self.n == 0 {
            let ok = self.root_bound_ok();
            if ok {
                *best = Some(Vec::new());
                on_solution(&[]);
            }
            return Stop::Exhausted;
        }
        let mut top = self.push_frame();
        loop {
            if self.n_assigned == self.n {
                let sol = self.value.clone();
                let keep_going = on_solution(&sol);
                if goal == Goal::MinWeight {
                    self.weight_cap = Some(self.weight - 1);
                }
                *best = Some(sol);
                if !keep_going {
                    return Stop::Requested;
                }
                top = self.frames.len() - 1;
                self.undo_value(top);
                let mut conf = std::mem::replace(&mut self.frames[top].conf, BitSet::new(0));
                conf.fill_below(top);
                self.frames[top].conf = conf;
            }
            // Try the next value at `top`.
            let var = self.frames[top].var;
            let cand = self.live[var] & !self.frames[top].tried;
            if cand == 0 {
                match self.backjump(top) {
                    Some(h) => {
                        top = h;
                        continue;
                    }
                    None => return Stop::Exhausted,
                }
            }
            let idx = cand.trailing_zeros();
            self.frames[top].tried |= 1 << idx;
            self.nodes += 1;
            if self.nodes >= self.limits.max_nodes
                || (self.nodes & 0xfff == 0 && self.limits.deadline.is_some_and(|d| Instant::now() >= d))
            {
                return Stop::Budget;
            }
            match self.assign(top, var, idx) {
                Ok(()) => {
                    if self.n_assigned < self.n {
                        top = self.push_frame();
                    }
                }
                Err(conf) => {
                    self.frames[top].conf.union_with(&conf);
                    self.undo_value(top);
                }
            }
        }
    }

    /// Permanent pruning from constraints that start with one open variable.
    fn root_filter(&mut self) -> bool {
        for cid in 0..self.cons.len() {
            let c = &self.cons[cid];
            match c.kind {
                Kind::NotZero => {
                    if c.terms.len() == 1 {
                        let (y, coef) = (c.terms[0].0 as usize, c.terms[0].1);
                        let target = -c.konst;
                        if target % coef == 0 {
                            if let Some(bit) = self.index_of(y, target / coef) {
                                self.live[y] &= !(1 << bit);
                            }
                        }
                    }
                }
                Kind::AtLeast(m) => {
                    if c.terms.is_empty() && c.konst < m {
                        return false;
                    }
                }
            }
        }
        self.root_live = self.live.clone();
        self.live.iter().all(|&l| l != 0)
    }

    fn root_bound_ok(&self) -> bool {
        self.weight_cap.is_none_or(|cap| cap >= 0)
    }

    fn index_of(&self, var: usize, value: i64) -> Option<u32> {
        self.vals[var].binary_search(&value).ok().map(|i| i as u32)
    }

    fn push_frame(&mut self) -> usize {
        let var = self.pick_var();
        let depth = self.frames.len();
        let mut f = self.spare.pop().unwrap_or_else(|| Frame {
            var: 0,
            tried: 0,
            cur: None,
            pruned: Vec::new(),
            conf: BitSet::new(self.n),
        });
        f.var = var;
        f.tried = 0;
        f.cur = None;
        f.pruned.clear();
        f.conf.clear();
        self.frames.push(f);
        depth
    }

    /// Smallest live domain first, then highest degree, then lowest id.
    fn pick_var(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (u32::MAX, 0usize);
        for v in 0..self.n {
            if self.assigned[v] {
                continue;
            }
            let k = (self.live[v].count_ones(), self.degree[v]);
            if best == usize::MAX || k.0 < key.0 || (k.0 == key.0 && k.1 > key.1) {
                best = v;
                key = k;
                if k.0 <= 1 {
                    break;
                }
            }
        }
        best
    }

    fn assign(&mut self, depth: usize, var: usize, idx: u32) -> std::result::Result<(), BitSet> {
        let val = self.vals[var][idx as usize];
        self.value[var] = val;
        self.assigned[var] = true;
        self.depth_of[var] = depth;
        self.n_assigned += 1;
        self.weight += val;
        self.frames[depth].cur = Some(idx);
        for k in 0..self.occ[var].len() {
            let (cid, coef) = self.occ[var][k];
            let cid = cid as usize;
            self.partial[cid] += coef * val;
            self.open[cid] -= 1;
            self.open_ids[cid] -= var as u64;
            self.open_coef[cid] -= coef;
        }
        for k in 0..self.occ[var].len() {
            let cid = self.occ[var][k].0 as usize;
            self.check_constraint(depth, cid)?;
        }
        if let Some(cap) = self.weight_cap {
            if self.lower_bound(cap) > cap {
                let mut conf = BitSet::new(self.n);
                conf.fill_below(depth);
                return Err(conf);
            }
        }
        Ok(())
    }

    fn check_constraint(&mut self, depth: usize, cid: usize) -> std::result::Result<(), BitSet> {
        let kind = self.cons[cid].kind;
        let base = self.partial[cid] + self.cons[cid].konst;
        match kind {
            Kind::NotZero => {
                if self.open[cid] == 0 {
                    if base == 0 {
                        return Err(self.scope_conflict(cid, depth));
                    }
                } else if self.open[cid] == 1 && self.propagate {
                    let y = self.open_ids[cid] as usize;
                    let coef = self.open_coef[cid];
                    if (-base) % coef == 0 {
                        if let Some(bit) = self.index_of(y, -base / coef) {
                            self.prune(depth, cid, y, 1 << bit)?;
                        }
                    }
                }
            }
            Kind::AtLeast(m) => {
                if self.open[cid] == 0 {
                    if base < m {
                        return Err(self.scope_conflict(cid, depth));
                    }
                } else if self.propagate {
                    // Upper bound from the open variables' largest live values.
                    let mut upper = base;
                    for &(y, _) in &self.cons[cid].terms {
                        let y = y as usize;
                        if !self.assigned[y] {
                            upper += self.vals[y][63 - self.live[y].leading_zeros() as usize];
                        }
                    }
                    if upper < m {
                        let mut conf = self.scope_conflict(cid, depth);
                        for k in 0..self.cons[cid].terms.len() {
                            let y = self.cons[cid].terms[k].0 as usize;
                            if !self.assigned[y] {
                                self.add_explanation(y, &mut conf);
                            }
                        }
                        conf.remove(depth);
                        return Err(conf);
                    }
                    if self.open[cid] == 1 {
                        let y = self.open_ids[cid] as usize;
                        let mut mask = 0u64;
                        for (i, &x) in self.vals[y].iter().enumerate() {
                            if base + x < m {
                                mask |= 1 << i;
                            }
                        }
                        if self.live[y] & mask != 0 {
                            self.prune(depth, cid, y, mask)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn prune(&mut self, depth: usize, cid: usize, y: usize, mask: u64) -> std::result::Result<(), BitSet> {
        let hit = self.live[y] & mask;
        if hit == 0 {
            return Ok(());
        }
        self.scratch.clear();
        for &(x, _) in &self.cons[cid].terms {
            let x = x as usize;
            if self.assigned[x] {
                self.scratch.insert(self.depth_of[x]);
            }
        }
        let mut bits = hit;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.why[y][b].clone_from(&self.scratch);
        }
        self.live[y] &= !hit;
        self.frames[depth].pruned.push((y, hit));
        if self.live[y] == 0 {
            let mut conf = BitSet::new(self.n);
            self.add_explanation(y, &mut conf);
            conf.remove(depth);
            return Err(conf);
        }
        Ok(())
    }

    /// Adds the depths behind every search-time pruning of `y`.
    fn add_explanation(&self, y: usize, conf: &mut BitSet) {
        let mut bits = self.root_live[y] & !self.live[y];
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            conf.union_with(&self.why[y][b]);
        }
    }

    fn scope_conflict(&self, cid: usize, depth: usize) -> BitSet {
        let mut conf = BitSet::new(self.n);
        for &(y, _) in &self.cons[cid].terms {
            let y = y as usize;
            if self.assigned[y] && self.depth_of[y] < depth {
                conf.insert(self.depth_of[y]);
            }
        }
        conf
    }

    fn lower_bound(&mut self, cap: i64) -> i64 {
        let mut lb = self.weight;
        for v in 0..self.n {
            if !self.assigned[v] {
                lb += self.vals[v][self.live[v].trailing_zeros() as usize];
            }
        }
        if lb > cap || !self.propagate {
            return lb;
        }
        self.stamp_gen = self.stamp_gen.wrapping_add(1);
        if self.stamp_gen == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.stamp_gen = 1;
        }
        let gen = self.stamp_gen;
        'cons: for cid in 0..self.cons.len() {
            if self.open[cid] == 0 {
                continue;
            }
            let c = &self.cons[cid];
            let mut at_min = self.partial[cid] + c.konst;
            let mut raise = i64::MAX;
            for &(y, coef) in &c.terms {
                let y = y as usize;
                if self.assigned[y] {
                    continue;
                }
                if self.stamp[y] == gen {
                    continue 'cons;
                }
                let live = self.live[y];
                let lo = live.trailing_zeros() as usize;
                at_min += coef * self.vals[y][lo];
                let rest = live & !(1 << lo);
                if rest != 0 {
                    raise = raise.min(self.vals[y][rest.trailing_zeros() as usize] - self.vals[y][lo]);
                }
            }
            let need = match c.kind {
                Kind::NotZero if at_min == 0 => raise,
                Kind::AtLeast(m) if at_min < m => (m - at_min).max(if raise == i64::MAX { i64::MAX } else { 0 }),
                _ => continue,
            };
            if need == i64::MAX {
                return i64::MAX;
            }
            lb += need;
            for &(y, _) in &c.terms {
                if !self.assigned[y as usize] {
                    self.stamp[y as usize] = gen;
                }
            }
            if lb > cap {
                return lb;
            }
        }
        lb
    }

    /// Reverts the current value at `depth`, keeping its tried mask.
    fn undo_value(&mut self, depth: usize) {
        let Some(idx) = self.frames[depth].cur.take() else { return };
        let var = self.frames[depth].var;
        let val = self.vals[var][idx as usize];
        let pruned = std::mem::take(&mut self.frames[depth].pruned);
        for &(y, mask) in &pruned {
            self.live[y] |= mask;
        }
        self.frames[depth].pruned = pruned;
        self.frames[depth].pruned.clear();
        for k in 0..self.occ[var].len() {
            let (cid, coef) = self.occ[var][k];
            let cid = cid as usize;
            self.partial[cid] -= coef * val;
            self.open[cid] += 1;
            self.open_ids[cid] += var as u64;
            self.open_coef[cid] += coef;
        }
        self.assigned[var] = false;
        self.depth_of[var] = usize::MAX;
        self.n_assigned -= 1;
        self.weight -= val;
    }

    /// Pops the exhausted frame at `top` and unwinds to the deepest frame in
    /// its conflict set. Returns that depth, or `None` when the set is empty.
    fn backjump(&mut self, top: usize) -> Option<usize> {
        let var = self.frames[top].var;
        let mut cs = self.frames[top].conf.clone();
        self.add_explanation(var, &mut cs);
        cs.remove(top);
        let f = self.frames.pop().expect("frame");
        self.spare.push(f);
        let h = cs.max()?;
        while self.frames.len() > h + 1 {
            let d = self.frames.len() - 1;
            self.undo_value(d);
            let f = self.frames.pop().expect("frame");
            self.spare.push(f);
        }
        self.undo_value(h);
        cs.remove(h);
        self.frames[h].conf.union_with(&cs);
        Some(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{is_additive, Labeling};

    fn limits() -> Limits {
        Limits::new(u64::MAX, Duration::from_secs(60))
    }

    fn count_solutions(p: &LabelProblem<'_>) -> usize {
        let mut count = 0;
        search(p, Goal::Enumerate, None, limits(), &mut |_| {
            count += 1;
            true
        })
        .unwrap();
        count
    }

    fn brute_count(g: &Graph, values: &[i64]) -> usize {
        let n = g.n();
        let k = values.len();
        let mut count = 0;
        let mut idx = vec![0usize; n];
        loop {
            let l: Vec<u64> = idx.iter().map(|&i| values[i] as u64).collect();
            if is_additive(g, &Labeling::from_vec(&l)) {
                count += 1;
            }
            let mut i = 0;
            while i < n {
                idx[i] += 1;
                if idx[i] < k {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == n {
                return count;
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let graphs = [
            Graph::cycle(5),
            Graph::cycle(6),
            Graph::complete(4),
            Graph::petersen(),
            Graph::path(5),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
        ];
        for g in &graphs {
            for values in [&[0, 1][..], &[1, 2][..], &[1, 2, 3][..]] {
                if g.n() > 6 && values.len() > 2 {
                    continue;
                }
                let p = LabelProblem::uniform(g, values);
                let expected = brute_count(g, values);
                assert_eq!(count_solutions(&p), expected, "{g:?} {values:?}");
                let mut q = p.clone();
                q.propagate = false;
                assert_eq!(count_solutions(&q), expected);
            }
        }
    }

    #[test]
    fn min_weight_on_c4() {
        let g = Graph::cycle(4);
        let p = LabelProblem::uniform(&g, &[0, 1]);
        let out = search(&p, Goal::MinWeight, None, limits(), &mut |_| true).unwrap();
        assert_eq!(out.stop, Stop::Exhausted);
        assert_eq!(out.best.unwrap().iter().sum::<i64>(), 1);
    }

    #[test]
    fn budget_stops_search() {
        let g = Graph::petersen();
        let p = LabelProblem::uniform(&g, &[1, 2, 3]);
        let out = search(&p, Goal::Enumerate, None, Limits::new(10, Duration::from_secs(5)), &mut |_| true).unwrap();
        assert_eq!(out.stop, Stop::Budget);
    }
}
