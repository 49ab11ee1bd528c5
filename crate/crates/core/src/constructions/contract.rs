//! Gadget contracts and their exhaustive certification.
//!
//! A port's neighbors outside the gadget are summarized by a boundary: how
//! many of them are forced to 1 and how many are free. Every offset in
//! `forced..=forced+free` is enumerated. Port-to-outside edges are not
//! checked here; the host is responsible for them.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde_json::{json, Value};

use super::GadgetInstance;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::labeling::Labeling;
use crate::solver::{search, Goal, LabelProblem, Limits, Stop};

/// Default bound on non-port vertices for exhaustive certification.
pub const DEFAULT_ENUMERATION_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PortBoundary {
    /// Fixed label of the port itself; `None` leaves it free in {0,1}.
    pub label: Option<u64>,
    pub forced_ones: u64,
    pub free: u64,
}

impl PortBoundary {
    pub fn fixed(label: u64, forced_ones: u64, free: u64) -> Self {
        PortBoundary { label: Some(label), forced_ones, free }
    }

    pub fn open(forced_ones: u64, free: u64) -> Self {
        PortBoundary { label: None, forced_ones, free }
    }

    fn offsets(&self) -> std::ops::RangeInclusive<u64> {
        self.forced_ones..=self.forced_ones + self.free
    }
}

/// A statement about one labeling of a gadget, over vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    True,
    Label(String, u64),
    /// Neighbor sum including the port's external offset.
    Sum(String, u64),
    SumIn(String, Vec<u64>),
    /// S(port) = offset + Σ labels of the listed vertices.
    SumIsOffsetPlus(String, Vec<String>),
    AnyOne(Vec<String>),
    Implies(Box<Predicate>, Box<Predicate>),
    All(Vec<Predicate>),
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::True => f.write_str("true"),
            Predicate::Label(v, x) => write!(f, "ℓ({v})={x}"),
            Predicate::Sum(v, x) => write!(f, "S({v})={x}"),
            Predicate::SumIn(v, xs) => write!(f, "S({v})∈{xs:?}"),
            Predicate::SumIsOffsetPlus(v, ws) => write!(f, "S({v})=e+Σℓ{ws:?}"),
            Predicate::AnyOne(ws) => write!(f, "some of {ws:?} is 1"),
            Predicate::Implies(a, b) => write!(f, "({a}) ⇒ ({b})"),
            Predicate::All(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ∧ ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Infeasible,
    /// Some labeling satisfies the predicate.
    Exists(Predicate),
    /// Every labeling satisfies the predicate.
    ForAll(Predicate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractClause {
    pub name: String,
    pub boundary: BTreeMap<String, PortBoundary>,
    pub expect: Expectation,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GadgetContract {
    pub clauses: Vec<ContractClause>,
}

impl GadgetContract {
    pub fn clause(mut self, name: impl Into<String>, boundary: &[(&str, PortBoundary)], expect: Expectation) -> Self {
        self.clauses.push(ContractClause {
            name: name.into(),
            boundary: boundary.iter().map(|(p, b)| (p.to_string(), *b)).collect(),
            expect,
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub clause: String,
    pub offsets: BTreeMap<String, u64>,
    /// The offending labeling; absent when an existence claim found none.
    pub labeling: Option<Labeling>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificationReport {
    pub gadget: String,
    pub internal_vertices: usize,
    pub cases: usize,
    pub labelings_checked: u64,
    pub nodes_explored: u64,
    pub complete: bool,
    pub countermodels: Vec<Countermodel>,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.complete && self.countermodels.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "gadget": self.gadget,
            "internal_vertices": self.internal_vertices,
            "cases": self.cases,
            "labelings_checked": self.labelings_checked,
            "nodes_explored": self.nodes_explored,
            "complete": self.complete,
            "passed": self.passed(),
            "countermodels": self.countermodels.iter().map(|c| json!({
                "clause": c.clause,
                "offsets": c.offsets,
                "labeling": c.labeling.as_ref().map(Labeling::to_text),
            })).collect::<Vec<_>>(),
        })
    }
}

struct View<'a> {
    inst: &'a GadgetInstance,
    labels: &'a [i64],
    offsets: &'a BTreeMap<Vertex, u64>,
}

impl View<'_> {
    fn vertex(&self, name: &str) -> Vertex {
        self.inst.vertex(name).unwrap_or_else(|| panic!("contract names unknown vertex `{name}`"))
    }

    fn label(&self, name: &str) -> u64 {
        self.labels[self.vertex(name)] as u64
    }

    fn offset(&self, v: Vertex) -> u64 {
        self.offsets.get(&v).copied().unwrap_or(0)
    }

    fn sum(&self, name: &str) -> u64 {
        let v = self.vertex(name);
        self.offset(v) + self.inst.graph.neighbors(v).iter().map(|&w| self.labels[w] as u64).sum::<u64>()
    }

    fn eval(&self, p: &Predicate) -> bool {
        match p {
            Predicate::True => true,
            Predicate::Label(v, x) => self.label(v) == *x,
            Predicate::Sum(v, x) => self.sum(v) == *x,
            Predicate::SumIn(v, xs) => xs.contains(&self.sum(v)),
            Predicate::SumIsOffsetPlus(v, ws) => {
                self.sum(v) == self.offset(self.vertex(v)) + ws.iter().map(|w| self.label(w)).sum::<u64>()
            }
            Predicate::AnyOne(ws) => ws.iter().any(|w| self.label(w) == 1),
            Predicate::Implies(a, b) => !self.eval(a) || self.eval(b),
            Predicate::All(ps) => ps.iter().all(|p| self.eval(p)),
        }
    }
}

/// Checks every clause of the gadget's contract by exhaustive enumeration of
/// binary additive labelings, for every boundary offset combination.
pub fn certify_gadget(inst: &GadgetInstance) -> Result<CertificationReport> {
    certify_with_cap(inst, DEFAULT_ENUMERATION_CAP)
}

pub fn certify_with_cap(inst: &GadgetInstance, cap: usize) -> Result<CertificationReport> {
    let internal = inst.internal_vertices();
    if internal > cap {
        return Err(Error::CapExceeded(format!("{} has {internal} internal vertices, cap is {cap}", inst.kind)));
    }
    let g = &inst.graph;
    let mut report = CertificationReport {
        gadget: inst.kind.to_string(),
        internal_vertices: internal,
        cases: 0,
        labelings_checked: 0,
        nodes_explored: 0,
        complete: true,
        countermodels: Vec::new(),
    };
    for clause in &inst.contract.clauses {
        let mut ports = Vec::new();
        for (name, b) in &clause.boundary {
            let v = inst
                .port(name)
                .ok_or_else(|| Error::Precondition(format!("contract names unknown port `{name}`")))?;
            ports.push((name.clone(), v, *b));
        }
        // Odometer over the offset ranges.
        let ranges: Vec<Vec<u64>> = ports.iter().map(|p| p.2.offsets().collect()).collect();
        let mut idx = vec![0usize; ports.len()];
        loop {
            report.cases += 1;
            let mut p = LabelProblem::uniform(g, &[0, 1]);
            let mut offsets = BTreeMap::new();
            let mut named = BTreeMap::new();
            for (k, (name, v, b)) in ports.iter().enumerate() {
                let e = ranges[k][idx[k]];
                p.sum_offsets[*v] = e as i64;
                offsets.insert(*v, e);
                named.insert(name.clone(), e);
                if let Some(l) = b.label {
                    p.domains[*v] = vec![l as i64];
                }
            }
            let limits = Limits::new(100_000_000, Duration::from_secs(120));
            let mut counter: Option<Countermodel> = None;
            let mut witnessed = false;
            let mut seen = 0u64;
            let out = search(&p, Goal::Enumerate, None, limits, &mut |sol| {
                seen += 1;
                let view = View { inst, labels: sol, offsets: &offsets };
                let to_label = || Labeling::from_vec(&sol.iter().map(|&x| x as u64).collect::<Vec<_>>());
                match &clause.expect {
                    Expectation::Infeasible => {
                        counter = Some(Countermodel { clause: clause.name.clone(), offsets: named.clone(), labeling: Some(to_label()) });
                        false
                    }
                    Expectation::Exists(pred) => {
                        witnessed = view.eval(pred);
                        !witnessed
                    }
                    Expectation::ForAll(pred) => {
                        if view.eval(pred) {
                            true
                        } else {
                            counter = Some(Countermodel { clause: clause.name.clone(), offsets: named.clone(), labeling: Some(to_label()) });
                            false
                        }
                    }
                }
            })?;
            report.nodes_explored += out.nodes;
            report.labelings_checked += seen;
            if out.stop == Stop::Budget {
                report.complete = false;
            }
            if let Some(c) = counter {
                report.countermodels.push(c);
            } else if matches!(clause.expect, Expectation::Exists(_)) && !witnessed && out.stop != Stop::Budget {
                report.countermodels.push(Countermodel { clause: clause.name.clone(), offsets: named, labeling: None });
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < ranges[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    Ok(report)
}
