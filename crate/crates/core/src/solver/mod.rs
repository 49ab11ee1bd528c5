//! Exact solvers for η, η₁, list-additivity, σ and proper total domination.

mod engine;
mod sigma;

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::labeling::{is_additive, verify_from_lists, verify_ptds, Labeling, ListAssignment};

pub(crate) use engine::{search, Goal, LabelProblem, Limits, Stop};
pub use sigma::sigma_label_cap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Found,
    Infeasible,
    BudgetExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Found => "found",
            Status::Infeasible => "infeasible",
            Status::BudgetExceeded => "budget-exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Labeling(Labeling),
    VertexSet(Vec<Vertex>),
}

impl Certificate {
    pub fn labeling(&self) -> Option<&Labeling> {
        match self {
            Certificate::Labeling(l) => Some(l),
            Certificate::VertexSet(_) => None,
        }
    }

    /// Labeling text; vertex sets are written as 0/1 indicator labelings.
    pub fn to_text(&self, n: usize) -> String {
        match self {
            Certificate::Labeling(l) => l.to_text(),
            Certificate::VertexSet(set) => {
                let mut l = Labeling::constant(n, 0);
                for &v in set {
                    l.set(v, 1);
                }
                l.to_text()
            }
        }
    }
}

/// Resource limits for one solver call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
    /// Only labelings of total weight at most this are admissible.
    pub weight_cap: Option<u64>,
    /// Largest label the η search will try.
    pub label_cap: Option<u64>,
    /// Forward checking and bound packing; switching it off never changes a status.
    pub propagate: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(60),
            weight_cap: None,
            label_cap: None,
            propagate: true,
        }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, ..Self::default() }
    }

    pub fn with_weight_cap(mut self, cap: u64) -> Self {
        self.weight_cap = Some(cap);
        self
    }

    pub fn without_propagation(mut self) -> Self {
        self.propagate = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 || self.max_time.is_zero() || self.label_cap == Some(0) {
            return Err(Error::Precondition("budget caps must be positive".into()));
        }
        Ok(())
    }

    fn limits(&self, start: Instant, spent: u64) -> Limits {
        Limits {
            max_nodes: self.max_nodes.saturating_sub(spent).max(1),
            deadline: start.checked_add(self.max_time),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub status: Status,
    pub value: Option<u64>,
    pub certificate: Option<Certificate>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// Label universe bound used by the σ search.
    pub label_cap: Option<u64>,
    /// Largest k settled before the η search ran out of budget.
    pub last_decided: Option<u64>,
}

impl SolveReport {
    fn new(status: Status, value: Option<u64>, certificate: Option<Certificate>, nodes: u64, start: Instant) -> Self {
        SolveReport {
            status,
            value,
            certificate,
            nodes_explored: nodes,
            elapsed: start.elapsed(),
            label_cap: None,
            last_decided: None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.status == Status::Found
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        self.certificate.as_ref().and_then(Certificate::labeling)
    }

    pub fn to_json(&self, n: usize) -> Value {
        let mut v = json!({
            "status": self.status,
            "value": self.value,
            "certificate": self.certificate.as_ref().map(|c| c.to_text(n)),
            "nodes_explored": self.nodes_explored,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        });
        if let Some(cap) = self.label_cap {
            v["label_cap"] = json!(cap);
        }
        if let Some(k) = self.last_decided {
            v["last_decided"] = json!(k);
        }
        v
    }
}

fn labeling_of(values: &[i64]) -> Labeling {
    Labeling::from_vec(&values.iter().map(|&x| x as u64).collect::<Vec<_>>())
}

fn require_vertices(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::Precondition("graph must have at least one vertex".into()));
    }
    Ok(())
}

/// First solution of `problem`, within `weight_cap` when given.
fn decide(problem: &LabelProblem<'_>, weight_cap: Option<u64>, limits: Limits) -> Result<(Stop, Option<Vec<i64>>, u64)> {
    let out = search(problem, Goal::Enumerate, weight_cap.map(|c| c as i64), limits, &mut |_| false)?;
    Ok((out.stop, out.best, out.nodes))
}

/// Binary search over the engine with the weight objective. `best` is the
/// optimum only when the returned stop is `Exhausted`.
fn minimize(problem: &LabelProblem<'_>, weight_cap: Option<u64>, limits: Limits) -> Result<(Stop, Option<Vec<i64>>, u64)> {
    let out = search(problem, Goal::MinWeight, weight_cap.map(|c| c as i64), limits, &mut |_| true)?;
    Ok((out.stop, out.best, out.nodes))
}

/// η(G): the least k admitting an additive labeling into {1..k}.
pub fn solve_eta(g: &Graph, budget: &SearchBudget) -> Result<SolveReport> {
    require_vertices(g)?;
    budget.validate()?;
    let start = Instant::now();
    let max_k = budget.label_cap.unwrap_or(64).min(64);
    let mut nodes = 0;
    let mut last_decided = None;
    for k in 1..=max_k {
        let values: Vec<i64> = (1..=k as i64).collect();
        let mut p = LabelProblem::uniform(g, &values);
        p.propagate = budget.propagate;
        let (stop, sol, spent) = decide(&p, None, budget.limits(start, nodes))?;
        nodes += spent;
        match (stop, sol) {
            (Stop::Budget, _) => break,
            (_, Some(sol)) => {
                let mut r = SolveReport::new(Status::Found, Some(k), Some(Certificate::Labeling(labeling_of(&sol))), nodes, start);
                r.last_decided = Some(k);
                return Ok(r);
            }
            (_, None) => last_decided = Some(k),
        }
    }
    let mut r = SolveReport::new(Status::BudgetExceeded, None, None, nodes, start);
    r.last_decided = last_decided;
    Ok(r)
}

/// η₁(G): the minimum weight of a (0,1)-additive labeling.
pub fn solve_eta1(g: &Graph, budget: &SearchBudget) -> Result<SolveReport> {
    require_vertices(g)?;
    budget.validate()?;
    let start = Instant::now();
    let mut p = LabelProblem::uniform(g, &[0, 1]);
    p.propagate = budget.propagate;
    let (stop, best, nodes) = minimize(&p, budget.weight_cap, budget.limits(start, 0))?;
    Ok(match (stop, best) {
        (Stop::Budget, best) => {
            // An incumbent is kept as certificate but not reported as optimal.
            let cert = best.map(|b| Certificate::Labeling(labeling_of(&b)));
            SolveReport::new(Status::BudgetExceeded, None, cert, nodes, start)
        }
        (_, Some(b)) => {
            let w = b.iter().sum::<i64>() as u64;
            SolveReport::new(Status::Found, Some(w), Some(Certificate::Labeling(labeling_of(&b))), nodes, start)
        }
        (_, None) => SolveReport::new(Status::Infeasible, None, None, nodes, start),
    })
}

/// Whether some (0,1)-additive labeling exists (of weight at most the
/// budget's weight cap, when one is set).
pub fn exists_binary(g: &Graph, budget: &SearchBudget) -> Result<SolveReport> {
    require_vertices(g)?;
    let mut p = LabelProblem::uniform(g, &[0, 1]);
    p.propagate = budget.propagate;
    decide_report(&p, budget)
}

pub(crate) fn decide_report(p: &LabelProblem<'_>, budget: &SearchBudget) -> Result<SolveReport> {
    budget.validate()?;
    let start = Instant::now();
    let (stop, sol, nodes) = decide(p, budget.weight_cap, budget.limits(start, 0))?;
    Ok(match (stop, sol) {
        (Stop::Budget, _) => SolveReport::new(Status::BudgetExceeded, None, None, nodes, start),
        (_, Some(sol)) => {
            let w = sol.iter().sum::<i64>() as u64;
            SolveReport::new(Status::Found, Some(w), Some(Certificate::Labeling(labeling_of(&sol))), nodes, start)
        }
        (_, None) => SolveReport::new(Status::Infeasible, None, None, nodes, start),
    })
}

fn list_domains(g: &Graph, lists: &ListAssignment) -> Result<Vec<Vec<i64>>> {
    lists.validate_total(g)?;
    (0..g.n())
        .map(|v| {
            let list = lists.get(v).expect("validated");
            if list.len() > 64 {
                return Err(Error::Precondition(format!("list of vertex {v} has more than 64 entries")));
            }
            Ok(list.iter().map(|&x| x as i64).collect())
        })
        .collect()
}

/// Whether an additive labeling with ℓ(v) ∈ L(v) exists.
pub fn decide_list_additive(g: &Graph, lists: &ListAssignment, budget: &SearchBudget) -> Result<SolveReport> {
    let mut p = LabelProblem::new(g, list_domains(g, lists)?);
    p.propagate = budget.propagate;
    let mut r = decide_report(&p, budget)?;
    if r.status == Status::Found {
        r.value = None;
    }
    Ok(r)
}

/// Result of trying to defeat a list assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// No additive labeling from the lists exists, so η_ℓ exceeds `list_size`.
    Refuted { list_size: usize, nodes_explored: u64, elapsed: Duration },
    /// The lists admit this additive labeling.
    Defeated(Labeling),
    /// The search ran out of budget.
    Inconclusive { nodes_explored: u64 },
}

impl Refutation {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Refutation::Refuted { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Refutation::Refuted { list_size, nodes_explored, elapsed } => json!({
                "status": "refuted",
                "list_size": list_size,
                "eta_l_lower_bound": list_size + 1,
                "nodes_explored": nodes_explored,
                "elapsed_ms": elapsed.as_millis() as u64,
            }),
            Refutation::Defeated(l) => json!({ "status": "defeated", "certificate": l.to_text() }),
            Refutation::Inconclusive { nodes_explored } => {
                json!({ "status": "budget-exceeded", "nodes_explored": nodes_explored })
            }
        }
    }
}

/// Certifies by exhaustive search that `lists` admit no additive labeling.
pub fn refute_lists(g: &Graph, lists: &ListAssignment, budget: &SearchBudget) -> Result<Refutation> {
    let r = decide_list_additive(g, lists, budget)?;
    Ok(match r.status {
        Status::Infeasible => Refutation::Refuted {
            list_size: lists.max_list_size(),
            nodes_explored: r.nodes_explored,
            elapsed: r.elapsed,
        },
        Status::Found => Refutation::Defeated(r.labeling().expect("certificate").clone()),
        Status::BudgetExceeded => Refutation::Inconclusive { nodes_explored: r.nodes_explored },
    })
}

/// σ(G): the fewest distinct labels in an additive labeling.
pub fn solve_sigma(g: &Graph, budget: &SearchBudget) -> Result<SolveReport> {
    require_vertices(g)?;
    budget.validate()?;
    sigma::solve(g, budget)
}

/// Minimum proper total dominating set.
pub fn min_ptds(g: &Graph, budget: &SearchBudget) -> Result<SolveReport> {
    require_vertices(g)?;
    budget.validate()?;
    let start = Instant::now();
    let mut p = LabelProblem::uniform(g, &[0, 1]);
    p.sum_floor = Some((1, vec![true; g.n()]));
    p.propagate = budget.propagate;
    let (stop, best, nodes) = minimize(&p, budget.weight_cap, budget.limits(start, 0))?;
    let set_of = |b: &[i64]| (0..g.n()).filter(|&v| b[v] == 1).collect::<Vec<_>>();
    Ok(match (stop, best) {
        (Stop::Budget, best) => SolveReport::new(
            Status::BudgetExceeded,
            None,
            best.map(|b| Certificate::VertexSet(set_of(&b))),
            nodes,
            start,
        ),
        (_, Some(b)) => {
            let set = set_of(&b);
            SolveReport::new(Status::Found, Some(set.len() as u64), Some(Certificate::VertexSet(set)), nodes, start)
        }
        (_, None) => SolveReport::new(Status::Infeasible, None, None, nodes, start),
    })
}

/// Re-verifies a report's certificate against `g`; vacuously true when absent.
pub fn certificate_verifies(g: &Graph, report: &SolveReport, lists: Option<&ListAssignment>) -> bool {
    match &report.certificate {
        None => report.status != Status::Found,
        Some(Certificate::Labeling(l)) => is_additive(g, l) && lists.is_none_or(|ls| verify_from_lists(l, ls)),
        Some(Certificate::VertexSet(d)) => verify_ptds(g, d),
    }
}
