//! Closed-form lower bounds on η and their consistency with exact values.

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{chromatic_number, max_clique, regularity, Graph};
use crate::solver::{solve_eta, solve_eta1, solve_sigma, SearchBudget, Status};

/// ⌈ω / (n − ω + 1)⌉.
pub fn clique_ratio_bound(g: &Graph) -> Result<u64> {
    let n = g.n() as u64;
    if n == 0 {
        return Err(Error::Precondition("graph must have at least one vertex".into()));
    }
    let w = max_clique(g).0 as u64;
    Ok(w.div_ceil(n - w + 1))
}

/// 3 when `g` is regular and ω > (n+4)/3.
pub fn regular_bound(g: &Graph) -> Option<u64> {
    regularity(g)?;
    let (w, _) = max_clique(g);
    (3 * w > g.n() + 4).then_some(3)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundFlags {
    pub eta_ge_clique_ratio: Option<bool>,
    pub eta_ge_regular_bound: Option<bool>,
    /// η ≤ χ; an open conjecture, reported and never assumed.
    pub eta_le_chi: Option<bool>,
    pub eta1_ge_chi_minus_one: Option<bool>,
    pub sigma_le_chi: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub omega: usize,
    pub chi: usize,
    pub clique_ratio_bound: u64,
    pub regular_bound: Option<u64>,
    pub eta: Option<u64>,
    pub eta1: Option<u64>,
    /// Whether η₁ is defined: found, infeasible, or budget-exceeded.
    pub eta1_status: Status,
    pub sigma: Option<u64>,
    pub flags: BoundFlags,
}

impl BoundsReport {
    /// Names of inequalities that were evaluated and failed.
    pub fn violations(&self) -> Vec<&'static str> {
        let f = &self.flags;
        [
            ("eta >= ceil(omega/(n-omega+1))", f.eta_ge_clique_ratio),
            ("eta >= regular bound", f.eta_ge_regular_bound),
            ("eta <= chi", f.eta_le_chi),
            ("eta1 >= chi-1", f.eta1_ge_chi_minus_one),
            ("sigma <= chi", f.sigma_le_chi),
        ]
        .into_iter()
        .filter(|(_, v)| *v == Some(false))
        .map(|(name, _)| name)
        .collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

/// Computes every parameter the budget allows and evaluates each inequality
/// whose inputs are available.
pub fn bounds_report(g: &Graph, budget: &SearchBudget) -> Result<BoundsReport> {
    let ratio = clique_ratio_bound(g)?;
    let (omega, _) = max_clique(g);
    let (chi, _) = chromatic_number(g);
    let reg = regular_bound(g);
    let eta = solve_eta(g, budget)?.value;
    let e1 = solve_eta1(g, budget)?;
    let sigma = solve_sigma(g, budget)?.value;
    let chi64 = chi as u64;
    let flags = BoundFlags {
        eta_ge_clique_ratio: eta.map(|e| e >= ratio),
        eta_ge_regular_bound: reg.and_then(|r| eta.map(|e| e >= r)),
        eta_le_chi: eta.map(|e| e <= chi64),
        eta1_ge_chi_minus_one: e1.value.map(|w| w + 1 >= chi64),
        sigma_le_chi: sigma.map(|s| s <= chi64),
    };
    Ok(BoundsReport {
        n: g.n(),
        omega,
        chi,
        clique_ratio_bound: ratio,
        regular_bound: reg,
        eta,
        eta1: e1.value,
        eta1_status: e1.status,
        sigma,
        flags,
    })
}
