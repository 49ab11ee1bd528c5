//! The three reductions: 3-SAT → G′(Φ), graph → G*, list coloring → H_G.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::gadgets::{add_amplifier_unit, add_clause_unit, add_variable_unit, add_vertex_unit};
use crate::error::{Error, Result};
use crate::graph::{is_triangle_free, Graph, GraphBuilder, Vertex};
use crate::labeling::ListAssignment;
use crate::oracles::{Cnf3Formula, Literal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    /// Source object (variable, clause, source vertex) → its vertices.
    pub provenance: BTreeMap<String, Vec<Vertex>>,
    /// Named attachment points: literal ports, gadget centers, original vertices.
    pub ports: BTreeMap<String, Vertex>,
    pub params: Value,
}

impl ReductionOutput {
    pub fn port(&self, name: &str) -> Option<Vertex> {
        self.ports.get(name).copied()
    }

    pub fn source_of(&self, v: Vertex) -> Option<&str> {
        self.provenance.iter().find(|(_, vs)| vs.contains(&v)).map(|(s, _)| s.as_str())
    }

    /// Sidecar JSON: 1-based vertex id → name and source object.
    pub fn provenance_json(&self) -> Value {
        let mut by_vertex = serde_json::Map::new();
        for (source, vs) in &self.provenance {
            for &v in vs {
                by_vertex.insert(
                    (v + 1).to_string(),
                    json!({ "name": self.graph.name(v), "source": source }),
                );
            }
        }
        json!({ "params": self.params, "vertices": Value::Object(by_vertex) })
    }
}

struct Tracker {
    provenance: BTreeMap<String, Vec<Vertex>>,
}

impl Tracker {
    fn record(&mut self, b: &GraphBuilder, source: String, from: Vertex) {
        self.provenance.entry(source).or_default().extend(from..b.len());
    }
}

pub(crate) fn literal_port_name(l: Literal) -> String {
    l.to_string()
}

/// G′(Φ): a B(x) per variable, an A(c) per clause, w_c^1 joined to the
/// ports of the clause's distinct literals.
pub fn build_sat_reduction(phi: &Cnf3Formula) -> Result<ReductionOutput> {
    if phi.clauses().is_empty() {
        return Err(Error::Precondition("formula has no clauses".into()));
    }
    let mut b = GraphBuilder::new();
    let mut t = Tracker { provenance: BTreeMap::new() };
    let mut ports = BTreeMap::new();
    for var in 0..phi.num_vars() {
        let start = b.len();
        let name = literal_port_name(Literal::pos(var));
        let (x, nx) = add_variable_unit(&mut b, &name);
        ports.insert(name.clone(), x);
        ports.insert(literal_port_name(Literal::neg(var)), nx);
        t.record(&b, format!("variable {name}"), start);
    }
    for (i, clause) in phi.clauses().iter().enumerate() {
        let start = b.len();
        let mut lits = clause.clone();
        lits.sort_unstable();
        lits.dedup();
        let targets: Vec<Vertex> = lits.iter().map(|&l| ports[&literal_port_name(l)]).collect();
        let cname = format!("c{}", i + 1);
        let w = add_clause_unit(&mut b, &cname, &targets);
        ports.insert(format!("w_{cname}^1"), w[0]);
        t.record(&b, format!("clause {cname}"), start);
    }
    let graph = b.build()?;
    if !is_triangle_free(&graph) {
        return Err(Error::ContractFailed("G′(Φ) contains a triangle".into()));
    }
    Ok(ReductionOutput {
        graph,
        provenance: t.provenance,
        ports,
        params: json!({ "formula": phi.to_string(), "variables": phi.num_vars(), "clauses": phi.clauses().len() }),
    })
}

/// Vertices in one D(v) with `d` pairs.
pub fn amplifier_size(d: usize) -> usize {
    8 + 2 * d
}

/// The pair count 5·k^(⌈3/ε⌉+1) from the hardness argument, if it fits.
pub fn paper_amplifier_d(k: u64, epsilon: f64) -> Option<u128> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return None;
    }
    let exp = (3.0 / epsilon).ceil() as u32 + 1;
    (k as u128).checked_pow(exp)?.checked_mul(5)
}

/// G*: a D(v) per vertex of `g`, with centers joined along the edges of `g`.
pub fn build_inapprox_reduction(g: &Graph, d: usize) -> Result<ReductionOutput> {
    if g.n() == 0 || d == 0 {
        return Err(Error::Precondition("G* needs a nonempty graph and d >= 1".into()));
    }
    let mut b = GraphBuilder::new();
    let mut t = Tracker { provenance: BTreeMap::new() };
    let mut ports = BTreeMap::new();
    let mut centers = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let start = b.len();
        let name = g.name(v).map(str::to_string).unwrap_or_else(|| format!("v{}", v + 1));
        let c = add_amplifier_unit(&mut b, &name, d, &format!("D({name})."));
        ports.insert(name.clone(), c);
        centers.push(c);
        t.record(&b, format!("vertex {name}"), start);
    }
    for &(u, v) in g.edges() {
        b.add_edge(centers[u], centers[v]);
    }
    Ok(ReductionOutput {
        graph: b.build()?,
        provenance: t.provenance,
        ports,
        params: json!({ "d": d, "n": g.n(), "weight_threshold": 5 * g.n() }),
    })
}

/// Order-preserving relabeling of the palette W onto {2..|W|+1}.
pub fn normalize_lists(lists: &ListAssignment) -> Result<(ListAssignment, BTreeMap<u64, u64>)> {
    if lists.is_empty() {
        return Err(Error::Precondition("list assignment is empty".into()));
    }
    let f: BTreeMap<u64, u64> = lists.palette().into_iter().zip(2..).collect();
    let mut out = ListAssignment::new();
    for (v, l) in lists.iter() {
        out.insert(v, l.iter().map(|x| f[x]));
    }
    Ok((out, f))
}

/// H_G: a G(v, L_f(v), |W|+1) per vertex of `g`, ports joined along `g`.
pub fn build_listcoloring_reduction(g: &Graph, lists: &ListAssignment) -> Result<ReductionOutput> {
    lists.validate_total(g)?;
    let (lf, f) = normalize_lists(lists)?;
    let s = f.len() as u64 + 1;
    let mut b = GraphBuilder::new();
    let mut t = Tracker { provenance: BTreeMap::new() };
    let mut ports = BTreeMap::new();
    let mut centers = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let start = b.len();
        let name = g.name(v).map(str::to_string).unwrap_or_else(|| format!("v{}", v + 1));
        let list: Vec<u64> = lf.get(v).expect("validated").iter().copied().collect();
        let c = add_vertex_unit(&mut b, &name, &list, s, &format!("G({name})."));
        ports.insert(name.clone(), c);
        centers.push(c);
        t.record(&b, format!("vertex {name}"), start);
    }
    for &(u, v) in g.edges() {
        b.add_edge(centers[u], centers[v]);
    }
    let fmap: BTreeMap<String, u64> = f.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    Ok(ReductionOutput {
        graph: b.build()?,
        provenance: t.provenance,
        ports,
        params: json!({ "s": s, "f": fmap, "n": g.n() }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sat_reduction_shape() {
        let phi = Cnf3Formula::new(3, vec![vec![Literal::pos(0), Literal::pos(1), Literal::pos(2)]]).unwrap();
        let r = build_sat_reduction(&phi).unwrap();
        assert_eq!(r.graph.n(), 3 * 18 + 5);
        let w1 = r.port("w_c1^1").unwrap();
        for x in ["x1", "x2", "x3"] {
            assert!(r.graph.has_edge(w1, r.port(x).unwrap()));
        }
        let covered: usize = r.provenance.values().map(Vec::len).sum();
        assert_eq!(covered, r.graph.n());
    }

    #[test]
    fn duplicate_literals_collapse() {
        let phi = Cnf3Formula::new(1, vec![vec![Literal::pos(0); 3]]).unwrap();
        let r = build_sat_reduction(&phi).unwrap();
        assert_eq!(r.graph.degree(r.port("w_c1^1").unwrap()), 3);
    }

    #[test]
    fn inapprox_shape() {
        let r = build_inapprox_reduction(&Graph::complete(2), 1).unwrap();
        assert_eq!(r.graph.n(), 2 * amplifier_size(1));
        assert!(r.graph.has_edge(r.port("v1").unwrap(), r.port("v2").unwrap()));
        assert_eq!(r.graph.edge_count(), 2 * (3 + 4 + 1 + 2) + 1);
    }

    #[test]
    fn normalization_is_order_preserving() {
        let l = ListAssignment::from_lists(vec![vec![3], vec![7, 3]]);
        let (lf, f) = normalize_lists(&l).unwrap();
        assert_eq!(f, BTreeMap::from([(3, 2), (7, 3)]));
        assert_eq!(lf.get(1).unwrap().iter().copied().collect::<Vec<_>>(), vec![2, 3]);
        let (_, f) = normalize_lists(&ListAssignment::uniform(2, &[2, 3, 4])).unwrap();
        assert!(f.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn paper_d() {
        assert_eq!(paper_amplifier_d(2, 3.0), Some(20));
        assert_eq!(paper_amplifier_d(2, 0.0), None);
    }
}
