//! Immutable undirected simple graphs and the basic parameters the bounds need.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::bits::BitSet;
use crate::error::{parse_err, Error, Result};

pub type Vertex = usize;

/// An undirected simple graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted. Neighbor lists are
/// sorted ascending. Names are metadata and never participate in identity
/// beyond equality of the whole value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    names: BTreeMap<Vertex, String>,
}

impl Graph {
    /// Builds a normalized graph. Duplicate pairs collapse; loops and
    /// out-of-range ids are rejected.
    pub fn new(
        n: usize,
        edge_list: impl IntoIterator<Item = (Vertex, Vertex)>,
        names: Option<BTreeMap<Vertex, String>>,
    ) -> Result<Self> {
        let mut edges = Vec::new();
        for (u, v) in edge_list {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let names = names.unwrap_or_default();
        if let Some((&v, _)) = names.iter().find(|(&v, _)| v >= n) {
            return Err(Error::UnknownVertex { vertex: v, n });
        }
        Ok(Graph { n, edges, adj, names })
    }

    pub fn from_edges(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self> {
        Graph::new(n, edge_list.iter().copied(), None)
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, [], None).expect("edgeless graph")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i)), None).expect("path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)), None).expect("cycle")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))), None).expect("complete")
    }

    pub fn petersen() -> Self {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, e, None).expect("petersen")
    }

    /// K_{2,2,2}: vertex `i` is non-adjacent only to `i ^ 1`.
    pub fn octahedron() -> Self {
        let e = (0..6).flat_map(|u| (u + 1..6).filter(move |&v| v != (u ^ 1)).map(move |v| (u, v)));
        Graph::new(6, e, None).expect("octahedron")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn name(&self, v: Vertex) -> Option<&str> {
        self.names.get(&v).map(String::as_str)
    }

    pub fn names(&self) -> &BTreeMap<Vertex, String> {
        &self.names
    }

    /// Looks a vertex up by its name.
    pub fn vertex_named(&self, name: &str) -> Option<Vertex> {
        self.names.iter().find(|(_, s)| s.as_str() == name).map(|(&v, _)| v)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Returns a copy with `extra` additional isolated vertices.
    pub fn with_isolated(&self, extra: usize) -> Graph {
        Graph::new(self.n + extra, self.edges.iter().copied(), Some(self.names.clone())).expect("valid")
    }

    /// Subgraph induced by `keep`, renumbered in the order given.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let names = keep
            .iter()
            .enumerate()
            .filter_map(|(i, v)| self.names.get(v).map(|s| (i, s.clone())))
            .collect();
        Graph::new(keep.len(), edges, Some(names)).expect("induced subgraph")
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub(crate) fn neighbor_bitsets(&self) -> Vec<BitSet> {
        self.adj
            .iter()
            .map(|list| {
                let mut b = BitSet::new(self.n);
                list.iter().for_each(|&w| b.insert(w));
                b
            })
            .collect()
    }

    /// Writes the DIMACS-style text form: `p edge n m`, then `c name` lines,
    /// then `e u v` lines, all 1-based.
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p edge {} {}", self.n, self.edges.len()).unwrap();
        for (v, name) in &self.names {
            writeln!(s, "c name {} {}", v + 1, name).unwrap();
        }
        for &(u, v) in &self.edges {
            writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
        }
        s
    }

    /// Parses the DIMACS-style text form. Plain `c` comment lines are ignored.
    pub fn from_dimacs(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut names = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("c") => {
                    if parts.next() == Some("name") {
                        let id = parse_id(parts.next(), line_no, header)?;
                        let rest = line
                            .splitn(4, char::is_whitespace)
                            .nth(3)
                            .ok_or_else(|| parse_err(line_no, "name line without a name"))?;
                        names.insert(id, rest.to_string());
                    }
                }
                Some("p") => {
                    if header.is_some() {
                        return Err(parse_err(line_no, "duplicate problem line"));
                    }
                    if parts.next() != Some("edge") {
                        return Err(parse_err(line_no, "expected `p edge <n> <m>`"));
                    }
                    let n = parse_num(parts.next(), line_no, "vertex count")?;
                    let m = parse_num(parts.next(), line_no, "edge count")?;
                    header = Some((n, m));
                }
                Some("e") => {
                    let u = parse_id(parts.next(), line_no, header)?;
                    let v = parse_id(parts.next(), line_no, header)?;
                    if u == v {
                        return Err(parse_err(line_no, format!("loop edge on vertex {}", u + 1)));
                    }
                    edges.push((u, v));
                }
                Some(tok) => return Err(parse_err(line_no, format!("unknown line type `{tok}`"))),
                None => {}
            }
        }
        let (n, m) = header.ok_or_else(|| parse_err(0, "missing `p edge` line"))?;
        let g = Graph::new(n, edges, Some(names))?;
        if g.edge_count() != m {
            return Err(parse_err(0, format!("header declares {m} edges, found {} distinct", g.edge_count())));
        }
        Ok(g)
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what}")))
}

fn parse_id(tok: Option<&str>, line: usize, header: Option<(usize, usize)>) -> Result<usize> {
    let (n, _) = header.ok_or_else(|| parse_err(line, "vertex reference before `p` line"))?;
    let id = parse_num(tok, line, "vertex id")?;
    if id == 0 || id > n {
        return Err(parse_err(line, format!("vertex id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

/// True iff no three mutually adjacent vertices exist.
pub fn is_triangle_free(g: &Graph) -> bool {
    g.edges().iter().all(|&(u, v)| {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    })
}

/// Degree `d` if every vertex has degree `d`.
pub fn regularity(g: &Graph) -> Option<usize> {
    if g.n() == 0 {
        return Some(0);
    }
    let d = g.degree(0);
    (0..g.n()).all(|v| g.degree(v) == d).then_some(d)
}

/// Exact maximum clique by branch and bound with a greedy-coloring bound.
/// Returns the clique number and a sorted witness.
pub fn max_clique(g: &Graph) -> (usize, Vec<Vertex>) {
    let n = g.n();
    if n == 0 {
        return (0, Vec::new());
    }
    let nb = g.neighbor_bitsets();
    let mut best: Vec<Vertex> = vec![0];
    let mut current = Vec::new();
    let mut cand = BitSet::new(n);
    cand.fill_below(n);
    clique_expand(&nb, &mut current, cand, &mut best);
    best.sort_unstable();
    (best.len(), best)
}

fn clique_expand(nb: &[BitSet], current: &mut Vec<Vertex>, cand: BitSet, best: &mut Vec<Vertex>) {
    // Greedy sequential coloring of the candidates gives, for each vertex in
    // order, an upper bound on the clique size reachable through it.
    let mut order: Vec<(Vertex, usize)> = Vec::new();
    let mut uncolored = cand.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.min() {
            avail.remove(v);
            uncolored.remove(v);
            order.push((v, color));
            for w in nb[v].iter() {
                avail.remove(w);
            }
        }
    }
    let mut cand = cand;
    for &(v, bound) in order.iter().rev() {
        if current.len() + bound <= best.len() {
            return;
        }
        current.push(v);
        let mut next = cand.clone();
        next.intersect_with(&nb[v]);
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            clique_expand(nb, current, next, best);
        }
        current.pop();
        cand.remove(v);
    }
}

/// Exact chromatic number with a witness coloring using colors `1..=χ`.
pub fn chromatic_number(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (0, Vec::new());
    }
    let (omega, _) = max_clique(g);
    for k in omega.max(1)..=n {
        if let Some(col) = k_coloring(g, k) {
            return (k, col);
        }
    }
    unreachable!("n colors always suffice")
}

/// A proper coloring with colors in `1..=k`, if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut col = vec![0usize; n];
    if color_rec(g, k, &mut col, 0, 0) {
        Some(col)
    } else {
        None
    }
}

fn color_rec(g: &Graph, k: usize, col: &mut [usize], done: usize, max_used: usize) -> bool {
    if done == col.len() {
        return true;
    }
    // DSATUR choice: most distinct neighbor colors, then degree, then id.
    let mut pick = usize::MAX;
    let mut key = (0usize, 0usize);
    for v in 0..col.len() {
        if col[v] != 0 {
            continue;
        }
        let mut seen = 0u128;
        for &w in g.neighbors(v) {
            if col[w] != 0 {
                seen |= 1 << (col[w] % 128);
            }
        }
        let k2 = (seen.count_ones() as usize, g.degree(v));
        if pick == usize::MAX || k2 > key {
            pick = v;
            key = k2;
        }
    }
    let v = pick;
    for c in 1..=k.min(max_used + 1) {
        if g.neighbors(v).iter().all(|&w| col[w] != c) {
            col[v] = c;
            if color_rec(g, k, col, done + 1, max_used.max(c)) {
                return true;
            }
            col[v] = 0;
        }
    }
    false
}

/// True iff `col` is a proper coloring of `g`.
pub fn is_proper_coloring<T: PartialEq>(g: &Graph, col: &[T]) -> bool {
    col.len() == g.n() && g.edges().iter().all(|&(u, v)| col[u] != col[v])
}

/// Incremental builder used by the constructions: vertices are appended in
/// order and may carry names.
#[derive(Default, Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    names: BTreeMap<Vertex, String>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Vertex {
        let v = self.n;
        self.n += 1;
        let name = name.into();
        if !name.is_empty() {
            self.names.insert(v, name);
        }
        v
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.edges.push((u, v));
    }

    /// Copies `g` in with all ids shifted; names get `prefix` prepended.
    pub fn append(&mut self, g: &Graph, prefix: &str) -> Vertex {
        let offset = self.n;
        for v in 0..g.n() {
            let name = g.name(v).map(|s| format!("{prefix}{s}")).unwrap_or_default();
            self.add_vertex(name);
        }
        for &(u, v) in g.edges() {
            self.add_edge(u + offset, v + offset);
        }
        offset
    }

    pub fn build(self) -> Result<Graph> {
        Graph::new(self.n, self.edges, Some(self.names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_path_and_duplicates() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.degree_sequence(), vec![1, 2, 1]);
        let k2 = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(k2.edge_count(), 1);
        assert_eq!(Graph::from_edges(1, &[(0, 0)]), Err(Error::LoopEdge(0)));
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn permuted_input_same_graph() {
        let a = Graph::from_edges(4, &[(0, 1), (2, 3), (1, 2)]).unwrap();
        let b = Graph::from_edges(4, &[(3, 2), (2, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn triangle_freeness() {
        assert!(is_triangle_free(&Graph::cycle(5)));
        assert!(!is_triangle_free(&Graph::complete(3)));
        assert!(is_triangle_free(&Graph::petersen()));
    }

    #[test]
    fn cliques() {
        assert_eq!(max_clique(&Graph::complete(4)).0, 4);
        assert_eq!(max_clique(&Graph::petersen()).0, 2);
        assert_eq!(max_clique(&Graph::octahedron()).0, 3);
        let (w, witness) = max_clique(&Graph::cycle(5));
        assert_eq!(w, 2);
        assert!(Graph::cycle(5).has_edge(witness[0], witness[1]));
    }

    #[test]
    fn chromatic() {
        assert_eq!(chromatic_number(&Graph::complete(4)).0, 4);
        assert_eq!(chromatic_number(&Graph::cycle(5)).0, 3);
        let oct = Graph::octahedron();
        let (chi, col) = chromatic_number(&oct);
        assert_eq!(chi, 3);
        assert!(is_proper_coloring(&oct, &col));
        assert!(k_coloring(&oct, 2).is_none());
        assert_eq!(chromatic_number(&Graph::petersen()).0, 3);
    }

    #[test]
    fn regular() {
        assert_eq!(regularity(&Graph::complete(4)), Some(3));
        assert_eq!(regularity(&Graph::path(3)), None);
        assert_eq!(regularity(&Graph::petersen()), Some(3));
    }

    #[test]
    fn dimacs_round_trip_with_names() {
        let mut b = GraphBuilder::new();
        let x = b.add_vertex("w_c^1");
        let y = b.add_vertex("");
        let z = b.add_vertex("y_x^3 extra");
        b.add_edge(x, y);
        b.add_edge(z, y);
        let g = b.build().unwrap();
        let text = g.to_dimacs();
        let back = Graph::from_dimacs(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_dimacs(), text);
        assert_eq!(back.name(2), Some("y_x^3 extra"));
    }

    #[test]
    fn dimacs_errors_are_line_precise() {
        let err = Graph::from_dimacs("p edge 3 1\ne 1 4\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, msg: "vertex id 4 outside 1..=3".into() });
        assert!(matches!(Graph::from_dimacs("e 1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Graph::from_dimacs("p edge 2 1\ne 2 2\n"), Err(Error::Parse { line: 2, .. })));
    }
}
