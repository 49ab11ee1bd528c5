//! Seeded instance families and the sweeps run by `check` and `bounds`.
//!
//! Instances are always drawn sequentially from one seeded stream and only
//! then evaluated, possibly in parallel, so results do not depend on the
//! number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::brute::{eta1_brute, eta_brute, ptds_brute, random_graph, random_lists, sigma_brute};
use super::harness::{check_equivalence_listcolor, check_equivalence_sat, check_threshold_inapprox, par_map, EquivalenceVerdict};
use super::{Cnf3Formula, Literal};
use crate::bounds::{bounds_report, BoundsReport};
use crate::constructions::{
    build_amplifier_gadget, build_clause_gadget, build_forcing_gadget, build_index_gadget, build_variable_gadget,
    build_vertex_gadget, certify_gadget, CertificationReport,
};
use crate::error::Result;
use crate::graph::Graph;
use crate::labeling::ListAssignment;
use crate::solver::{
    certificate_verifies, exists_binary, min_ptds, solve_eta, solve_eta1, solve_sigma, SearchBudget, Status,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graphs with 1..=max_n vertices and edge density drawn from [0.2, 0.8).
pub fn random_graphs(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max_n);
            let p = r.gen_range(0.2..0.8);
            random_graph(&mut r, n, p)
        })
        .collect()
}

/// The exhaustive ≤2-variable, ≤2-clause family followed by `random` formulas
/// with 3 variables and 3 clauses.
pub fn sat_instances(seed: u64, random: usize) -> Vec<Cnf3Formula> {
    let mut out = Cnf3Formula::exhaustive_family(2, 2);
    let mut r = rng(seed);
    out.extend((0..random).map(|_| Cnf3Formula::random(&mut r, 3, 3)));
    out
}

pub fn sat_sweep(seed: u64, random: usize, jobs: usize, budget: &SearchBudget) -> Result<Vec<EquivalenceVerdict>> {
    let instances = sat_instances(seed, random);
    par_map(jobs, &instances, |f| check_equivalence_sat(f, budget)).into_iter().collect()
}

/// K₂ with distinct and equal singleton lists, K₃ with {1,2} everywhere,
/// then `random` graphs on at most 4 vertices with lists inside {1,2,3}.
pub fn listcolor_instances(seed: u64, random: usize) -> Vec<(Graph, ListAssignment)> {
    let mut out = vec![
        (Graph::complete(2), ListAssignment::from_lists(vec![vec![1], vec![2]])),
        (Graph::complete(2), ListAssignment::from_lists(vec![vec![1], vec![1]])),
        (Graph::complete(3), ListAssignment::uniform(3, &[1, 2])),
    ];
    let mut r = rng(seed);
    for _ in 0..random {
        let n = r.gen_range(1..=4);
        let g = random_graph(&mut r, n, 0.5);
        let l = random_lists(&mut r, n, &[1, 2, 3]);
        out.push((g, l));
    }
    out
}

pub fn listcolor_sweep(seed: u64, random: usize, jobs: usize, budget: &SearchBudget) -> Result<Vec<EquivalenceVerdict>> {
    let instances = listcolor_instances(seed, random);
    par_map(jobs, &instances, |(g, l)| check_equivalence_listcolor(g, l, budget)).into_iter().collect()
}

/// Triangle with d = 16 and K₄ with d = 21.
pub fn inapprox_sweep(budget: &SearchBudget) -> Result<Vec<EquivalenceVerdict>> {
    vec![check_threshold_inapprox(&Graph::complete(3), 16, budget)?, check_threshold_inapprox(&Graph::complete(4), 21, budget)?]
        .into_iter()
        .map(Ok)
        .collect()
}

/// exists_binary on C_n for n = 3..=9; odd cycles must be infeasible.
pub fn odd_cycle_sweep(budget: &SearchBudget) -> Result<Vec<(usize, Status, bool)>> {
    (3..=9)
        .map(|n| {
            let r = exists_binary(&Graph::cycle(n), budget)?;
            let want = if n % 2 == 1 { Status::Infeasible } else { Status::Found };
            Ok((n, r.status, r.status == want && certificate_verifies(&Graph::cycle(n), &r, None)))
        })
        .collect()
}

/// Certification reports for the shipped gadgets, in a fixed order, plus
/// the corrupted B(x) negative control as the last entry (which must fail).
pub fn gadget_suite() -> Result<Vec<CertificationReport>> {
    let mut out = Vec::new();
    let lits = [Literal::pos(0), Literal::pos(1), Literal::pos(2)];
    let mut instances = vec![build_clause_gadget(&lits)?, build_variable_gadget()?, build_forcing_gadget()?];
    for j in 2..=4 {
        instances.push(build_index_gadget(j)?);
    }
    instances.push(build_vertex_gadget(&[2], 3)?);
    for d in 1..=3 {
        instances.push(build_amplifier_gadget(d)?);
    }
    for inst in &instances {
        out.push(certify_gadget(inst)?);
    }
    let b = build_variable_gadget()?;
    let corrupted = b.without_edge(b.port("x").expect("port"), b.vertex("y_x^6").expect("vertex"));
    let mut control = certify_gadget(&corrupted)?;
    control.gadget = format!("{} without edge x-y_x^6", control.gadget);
    out.push(control);
    Ok(out)
}

/// One graph's solver values next to the brute-force values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    pub graph: Graph,
    pub eta: (Option<u64>, u64),
    pub eta1: (Option<u64>, Option<u64>),
    pub sigma: (Option<u64>, u64),
    pub ptds: (Option<u64>, Option<u64>),
    pub certificates_verify: bool,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.eta.0 == Some(self.eta.1)
            && self.eta1.0 == self.eta1.1
            && self.sigma.0 == Some(self.sigma.1)
            && self.ptds.0 == self.ptds.1
            && self.certificates_verify
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.graph.n(),
            "edges": self.graph.edges(),
            "eta": [self.eta.0, self.eta.1],
            "eta1": [self.eta1.0, self.eta1.1],
            "sigma": [self.sigma.0, self.sigma.1],
            "ptds": [self.ptds.0, self.ptds.1],
            "certificates_verify": self.certificates_verify,
            "agree": self.agrees(),
        })
    }
}

pub fn compare_with_oracles(g: &Graph, budget: &SearchBudget) -> Result<OracleComparison> {
    let eta = solve_eta(g, budget)?;
    let eta1 = solve_eta1(g, budget)?;
    let sigma = solve_sigma(g, budget)?;
    let ptds = min_ptds(g, budget)?;
    let certificates_verify = [&eta, &eta1, &sigma, &ptds].iter().all(|r| certificate_verifies(g, r, None));
    // An infeasible η₁ is `None` on both sides; a budget cut never is.
    let decided = |s: Status, v: Option<u64>| if s == Status::BudgetExceeded { Some(u64::MAX) } else { v };
    Ok(OracleComparison {
        graph: g.clone(),
        eta: (eta.value, eta_brute(g)?.0),
        eta1: (decided(eta1.status, eta1.value), eta1_brute(g)?.map(|x| x.0)),
        sigma: (sigma.value, sigma_brute(g)?.0),
        ptds: (decided(ptds.status, ptds.value), ptds_brute(g)?.map(|d| d.len() as u64)),
        certificates_verify,
    })
}

pub fn oracle_sweep(seed: u64, count: usize, max_n: usize, jobs: usize, budget: &SearchBudget) -> Result<Vec<OracleComparison>> {
    let graphs = random_graphs(seed, count, max_n);
    par_map(jobs, &graphs, |g| compare_with_oracles(g, budget)).into_iter().collect()
}

pub fn bounds_sweep(seed: u64, count: usize, max_n: usize, jobs: usize, budget: &SearchBudget) -> Result<Vec<(Graph, BoundsReport)>> {
    let graphs = random_graphs(seed, count, max_n);
    par_map(jobs, &graphs, |g| bounds_report(g, budget).map(|r| (g.clone(), r))).into_iter().collect()
}
