//! σ search over label classes.
//!
//! With vertices split into classes and class j labeled x_j, edge `uv` is
//! satisfied iff `Σ_j (c_u[j] − c_v[j]) x_j ≠ 0` where c counts neighbors per
//! class. A partition whose difference vectors are all nonzero always has a
//! solution in {1..|E|+1}: fixing x_0, x_1, … in turn, each edge blocks at
//! most one value at the last class it depends on. So σ is the least number
//! of classes admitting such a partition, and the label cap never binds.

use std::time::Instant;

use super::{Certificate, SearchBudget, SolveReport, Status};
use crate::error::Result;
use crate::graph::Graph;
use crate::labeling::{is_additive, Labeling};

/// Label universe {1..n·Δ+1} reported alongside σ.
pub fn sigma_label_cap(g: &Graph) -> u64 {
    (g.n() * g.max_degree() + 1) as u64
}

struct Partition<'g> {
    g: &'g Graph,
    /// Edges whose difference vector is fully determined once vertex `i` has a class.
    ready: Vec<Vec<(usize, usize)>>,
    class: Vec<usize>,
    counts: Vec<i64>,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    out_of_budget: bool,
}

impl Partition<'_> {
    fn edge_alive(&mut self, u: usize, v: usize, m: usize) -> bool {
        self.counts[..m].iter_mut().for_each(|c| *c = 0);
        for &w in self.g.neighbors(u) {
            self.counts[self.class[w]] += 1;
        }
        for &w in self.g.neighbors(v) {
            self.counts[self.class[w]] -= 1;
        }
        self.counts[..m].iter().any(|&c| c != 0)
    }

    fn extend(&mut self, i: usize, used: usize, m: usize) -> bool {
        if i == self.class.len() {
            return true;
        }
        for c in 0..(used + 1).min(m) {
            self.nodes += 1;
            if self.nodes >= self.max_nodes
                || (self.nodes & 0xfff == 0 && self.deadline.is_some_and(|d| Instant::now() >= d))
            {
                self.out_of_budget = true;
                return false;
            }
            self.class[i] = c;
            let mut ok = true;
            for k in 0..self.ready[i].len() {
                let (u, v) = self.ready[i][k];
                if !self.edge_alive(u, v, m) {
                    ok = false;
                    break;
                }
            }
            if ok && self.extend(i + 1, used.max(c + 1), m) {
                return true;
            }
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Greedy class values, smallest first, avoiding every edge hyperplane.
fn class_values(g: &Graph, class: &[usize], m: usize) -> Vec<u64> {
    let vecs: Vec<Vec<i64>> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut c = vec![0i64; m];
            g.neighbors(u).iter().for_each(|&w| c[class[w]] += 1);
            g.neighbors(v).iter().for_each(|&w| c[class[w]] -= 1);
            c
        })
        .collect();
    let mut x = vec![0i64; m];
    for j in 0..m {
        let blocked: Vec<i64> = vecs
            .iter()
            .filter(|c| c[j] != 0 && c[j + 1..].iter().all(|&a| a == 0))
            .filter_map(|c| {
                let rest: i64 = (0..j).map(|i| c[i] * x[i]).sum();
                (rest % c[j] == 0).then(|| -rest / c[j])
            })
            .collect();
        x[j] = (1..).find(|val| !blocked.contains(val)).expect("unbounded range");
    }
    x.into_iter().map(|v| v as u64).collect()
}

pub(super) fn solve(g: &Graph, budget: &SearchBudget) -> Result<SolveReport> {
    let start = Instant::now();
    let n = g.n();
    let mut ready = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        let last = g.neighbors(u).iter().chain(g.neighbors(v)).copied().max().expect("edge endpoints are neighbors");
        ready[last].push((u, v));
    }
    let mut p = Partition {
        g,
        ready,
        class: vec![0; n],
        counts: vec![0; n.max(1)],
        nodes: 0,
        max_nodes: budget.max_nodes,
        deadline: start.checked_add(budget.max_time),
        out_of_budget: false,
    };
    let cap = sigma_label_cap(g);
    for m in 1..=n {
        if p.extend(0, 0, m) {
            let x = class_values(g, &p.class, m);
            let labels: Vec<u64> = p.class.iter().map(|&c| x[c]).collect();
            let l = Labeling::from_vec(&labels);
            debug_assert!(is_additive(g, &l));
            debug_assert!(l.max_label().unwrap_or(0) <= cap);
            let value = l.distinct_labels() as u64;
            let mut r = SolveReport {
                status: Status::Found,
                value: Some(value),
                certificate: Some(Certificate::Labeling(l)),
                nodes_explored: p.nodes,
                elapsed: start.elapsed(),
                label_cap: Some(cap),
                last_decided: None,
            };
            if value != m as u64 {
                // Fewer distinct values than classes would contradict minimality of m.
                r.status = Status::BudgetExceeded;
                r.value = None;
            }
            return Ok(r);
        }
        if p.out_of_budget {
            break;
        }
    }
    Ok(SolveReport {
        status: Status::BudgetExceeded,
        value: None,
        certificate: None,
        nodes_explored: p.nodes,
        elapsed: start.elapsed(),
        label_cap: Some(cap),
        last_decided: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_values_respect_hyperplanes() {
        let g = Graph::complete(5);
        let class: Vec<usize> = (0..5).collect();
        let x = class_values(&g, &class, 5);
        let l = Labeling::from_vec(&x);
        assert!(is_additive(&g, &l));
        assert!(x.iter().all(|&v| v <= g.edge_count() as u64 + 1));
    }

    #[test]
    fn odd_cycle_needs_three() {
        let r = solve(&Graph::cycle(5), &SearchBudget::default()).unwrap();
        assert_eq!(r.value, Some(3));
        assert_eq!(r.label_cap, Some(11));
    }
}
