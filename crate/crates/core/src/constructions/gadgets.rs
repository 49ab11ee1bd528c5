//! Gadget graphs and their contracts.
//!
//! Edge sets (ports in brackets):
//!
//! * T(w): triangles x1x2x3 and y1y2y3, path x3 - w - y4 - y3, extra edges
//!   x1y3 and x3y3, and w - [v].
//! * I(j): [u_j] is the port of j T-units; their centers are w, z1..z_{j-1}.
//! * G(v, L, s): [v] is the port of a T-unit, is adjacent to u_j of an I(j)
//!   for every j in {2..s} not in L, and carries s-1 pendants.
//! * A(c): cycle w1 w2 w4 w5 w3, w1 adjacent to every distinct literal port.
//! * B(x): cycle y1 y2 y4 y5 y3, y6 adjacent to y5, [x] and [¬x]; z1..z5
//!   pendant on x and z6..z10 pendant on ¬x. The ports are not adjacent.
//! * D(v): triangle p1p2p3 with p3 - [v]; p4, p5, p6 adjacent to v; h
//!   pendant on p5; paths p5 - v_i - v'_i for i = 1..d.

use std::collections::BTreeMap;

use super::contract::{
    certify_gadget, Expectation, GadgetContract, PortBoundary, Predicate, DEFAULT_ENUMERATION_CAP,
};
use super::{GadgetInstance, GadgetKind};
use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, Vertex};
use crate::oracles::Literal;

/// Adds a T-unit hanging off `port`; returns its center.
pub(crate) fn add_forcing_unit(b: &mut GraphBuilder, port: Vertex, center: &str, prefix: &str) -> Vertex {
    let w = b.add_vertex(center);
    let x: Vec<Vertex> = (1..=3).map(|i| b.add_vertex(format!("{prefix}x{i}"))).collect();
    let y: Vec<Vertex> = (1..=4).map(|i| b.add_vertex(format!("{prefix}y{i}"))).collect();
    for (p, q) in [(x[0], x[1]), (x[0], x[2]), (x[1], x[2]), (y[0], y[1]), (y[0], y[2]), (y[1], y[2])] {
        b.add_edge(p, q);
    }
    for (p, q) in [(x[2], w), (y[2], y[3]), (y[3], w), (w, port), (x[0], y[2]), (x[2], y[2])] {
        b.add_edge(p, q);
    }
    w
}

pub(crate) fn add_index_unit(b: &mut GraphBuilder, j: usize, prefix: &str) -> Vertex {
    let u = b.add_vertex(format!("{prefix}u_{j}"));
    for i in 0..j {
        let center = if i == 0 { format!("{prefix}w") } else { format!("{prefix}z{i}") };
        add_forcing_unit(b, u, &center, &format!("{prefix}t{i}."));
    }
    u
}

pub(crate) fn add_vertex_unit(b: &mut GraphBuilder, name: &str, list: &[u64], s: u64, prefix: &str) -> Vertex {
    let v = b.add_vertex(name);
    add_forcing_unit(b, v, &format!("{prefix}w"), &format!("{prefix}t."));
    for j in 2..=s {
        if !list.contains(&j) {
            let u = add_index_unit(b, j as usize, &format!("{prefix}I{j}."));
            b.add_edge(v, u);
        }
    }
    for i in 1..s {
        let q = b.add_vertex(format!("{prefix}q{i}"));
        b.add_edge(v, q);
    }
    v
}

/// Adds the clause cycle; `ports` must already be distinct.
pub(crate) fn add_clause_unit(b: &mut GraphBuilder, clause: &str, ports: &[Vertex]) -> Vec<Vertex> {
    let w: Vec<Vertex> = (1..=5).map(|i| b.add_vertex(format!("w_{clause}^{i}"))).collect();
    for (p, q) in [(0, 1), (1, 3), (3, 4), (4, 2), (2, 0)] {
        b.add_edge(w[p], w[q]);
    }
    for &p in ports {
        b.add_edge(w[0], p);
    }
    w
}

/// Adds B(x) with ports named `var` and `¬var`; returns the two ports.
pub(crate) fn add_variable_unit(b: &mut GraphBuilder, var: &str) -> (Vertex, Vertex) {
    let x = b.add_vertex(var);
    let nx = b.add_vertex(format!("¬{var}"));
    let y: Vec<Vertex> = (1..=6).map(|i| b.add_vertex(format!("y_{var}^{i}"))).collect();
    for (p, q) in [(0, 1), (1, 3), (3, 4), (4, 2), (2, 0), (5, 4)] {
        b.add_edge(y[p], y[q]);
    }
    b.add_edge(y[5], x);
    b.add_edge(y[5], nx);
    for i in 1..=10 {
        let z = b.add_vertex(format!("z_{var}^{i}"));
        b.add_edge(z, if i <= 5 { x } else { nx });
    }
    (x, nx)
}

pub(crate) fn add_amplifier_unit(b: &mut GraphBuilder, name: &str, d: usize, prefix: &str) -> Vertex {
    let v = b.add_vertex(name);
    let p: Vec<Vertex> = (1..=6).map(|i| b.add_vertex(format!("{prefix}p{i}"))).collect();
    for (s, t) in [(0, 1), (1, 2), (0, 2)] {
        b.add_edge(p[s], p[t]);
    }
    for &q in &p[2..6] {
        b.add_edge(q, v);
    }
    let h = b.add_vertex(format!("{prefix}h"));
    b.add_edge(h, p[4]);
    for i in 1..=d {
        let a = b.add_vertex(format!("{prefix}v_{i}"));
        let c = b.add_vertex(format!("{prefix}v'_{i}"));
        b.add_edge(p[4], a);
        b.add_edge(a, c);
    }
    v
}

fn finish(b: GraphBuilder, ports: &[(&str, Vertex)], kind: GadgetKind, contract: GadgetContract) -> Result<GadgetInstance> {
    let inst = GadgetInstance {
        graph: b.build()?,
        ports: ports.iter().map(|(n, v)| (n.to_string(), *v)).collect(),
        kind,
        contract,
        certified: false,
    };
    inst.check_ports()?;
    Ok(inst)
}

/// Certifies at build time when the gadget is small enough to enumerate.
fn certified(mut inst: GadgetInstance, enumerate: bool) -> Result<GadgetInstance> {
    if enumerate && inst.internal_vertices() <= DEFAULT_ENUMERATION_CAP {
        let report = certify_gadget(&inst)?;
        if !report.passed() {
            return Err(Error::ContractFailed(format!("{}: {:?}", inst.kind, report.countermodels.first())));
        }
        inst.certified = true;
    }
    Ok(inst)
}

fn label(v: &str, x: u64) -> Predicate {
    Predicate::Label(v.into(), x)
}

/// T(w): forces ℓ(v)=0, ℓ(w)=1 and S(w)=1 in every host.
pub fn build_forcing_gadget() -> Result<GadgetInstance> {
    let mut b = GraphBuilder::new();
    let v = b.add_vertex("v");
    add_forcing_unit(&mut b, v, "w", "");
    let contract = GadgetContract::default()
        .clause(
            "forces v=0, w=1, S(w)=1",
            &[("v", PortBoundary::open(0, 6))],
            Expectation::ForAll(Predicate::All(vec![label("v", 0), label("w", 1), Predicate::Sum("w".into(), 1)])),
        )
        .clause("extends when v has a 1-labeled outside neighbor", &[("v", PortBoundary::open(1, 5))], Expectation::Exists(Predicate::True));
    certified(finish(b, &[("v", v)], GadgetKind::Forcing, contract)?, true)
}

/// I(j): with u_j's outside neighbor forced to 0, S(u_j) = j exactly.
pub fn build_index_gadget(j: usize) -> Result<GadgetInstance> {
    if j < 2 {
        return Err(Error::Precondition(format!("I(j) needs j >= 2, got {j}")));
    }
    let mut b = GraphBuilder::new();
    let u = add_index_unit(&mut b, j, "");
    let name = format!("u_{j}");
    let mut centers = vec![label("w", 1)];
    centers.extend((1..j).map(|i| label(&format!("z{i}"), 1)));
    centers.push(label(&name, 0));
    centers.push(Predicate::Sum(name.clone(), j as u64));
    let contract = GadgetContract::default()
        .clause(format!("S(u_{j}) = {j}"), &[(&name, PortBoundary::fixed(0, 0, 0))], Expectation::ForAll(Predicate::All(centers)))
        .clause("extends", &[(&name, PortBoundary::fixed(0, 0, 0))], Expectation::Exists(Predicate::True));
    certified(finish(b, &[(&name, u)], GadgetKind::Index { j }, contract)?, true)
}

/// G(v, L, s): with v's outside neighbors forced to 0, S(v) ∈ L and every
/// value of L is attained.
pub fn build_vertex_gadget(list: &[u64], s: u64) -> Result<GadgetInstance> {
    if list.is_empty() {
        return Err(Error::Precondition("G(v, L, s) needs a nonempty list".into()));
    }
    if let Some(x) = list.iter().find(|&&x| x < 2 || x > s) {
        return Err(Error::Precondition(format!("list value {x} is outside 2..={s}")));
    }
    let mut list = list.to_vec();
    list.sort_unstable();
    list.dedup();
    let mut b = GraphBuilder::new();
    let v = add_vertex_unit(&mut b, "v", &list, s, "");
    let bnd = [("v", PortBoundary::open(0, 0))];
    let mut contract = GadgetContract::default().clause(
        format!("S(v) ∈ {list:?}"),
        &bnd,
        Expectation::ForAll(Predicate::All(vec![label("v", 0), Predicate::SumIn("v".into(), list.clone())])),
    );
    for &j in &list {
        contract = contract.clause(format!("S(v) = {j} attainable"), &bnd, Expectation::Exists(Predicate::Sum("v".into(), j)));
    }
    certified(finish(b, &[("v", v)], GadgetKind::Vertex { list, s }, contract)?, true)
}

/// A(c) for the given literals; repeated literals share one port.
pub fn build_clause_gadget(literals: &[Literal]) -> Result<GadgetInstance> {
    if literals.is_empty() || literals.len() > 3 {
        return Err(Error::Precondition("a clause has 1 to 3 literals".into()));
    }
    let mut distinct = literals.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut b = GraphBuilder::new();
    let names: Vec<String> = distinct.iter().map(|l| l.to_string()).collect();
    let ports: Vec<Vertex> = names.iter().map(|n| b.add_vertex(n.as_str())).collect();
    add_clause_unit(&mut b, "c", &ports);
    let mut contract = GadgetContract::default();
    for mask in 0u32..(1 << ports.len()) {
        let bits: Vec<u64> = (0..ports.len()).map(|i| (mask >> i & 1) as u64).collect();
        if mask == 0 {
            let bnd: Vec<(&str, PortBoundary)> = names.iter().map(|n| (n.as_str(), PortBoundary::fixed(0, 0, 8))).collect();
            contract = contract.clause("all literals 0", &bnd, Expectation::Infeasible);
        } else {
            let bnd: Vec<(&str, PortBoundary)> =
                names.iter().zip(&bits).map(|(n, &x)| (n.as_str(), PortBoundary::fixed(x, 5, 3))).collect();
            contract = contract.clause(format!("literals {bits:?}"), &bnd, Expectation::Exists(Predicate::True));
        }
    }
    let port_refs: Vec<(&str, Vertex)> = names.iter().map(|n| n.as_str()).zip(ports).collect();
    certified(finish(b, &port_refs, GadgetKind::Clause { literals: distinct.len() }, contract)?, true)
}

/// B(x): forbids ℓ(x) = ℓ(¬x) = 1; every other port pair extends.
pub fn build_variable_gadget() -> Result<GadgetInstance> {
    let mut b = GraphBuilder::new();
    let (x, nx) = add_variable_unit(&mut b, "x");
    let mut contract = GadgetContract::default();
    for (a, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let bnd = [("x", PortBoundary::fixed(a, 0, 3)), ("¬x", PortBoundary::fixed(c, 0, 3))];
        let expect = if (a, c) == (1, 1) { Expectation::Infeasible } else { Expectation::Exists(Predicate::True) };
        contract = contract.clause(format!("ports ({a},{c})"), &bnd, expect);
    }
    certified(finish(b, &[("x", x), ("¬x", nx)], GadgetKind::Variable, contract)?, true)
}

/// p4, p5, p6 labels for each color of the amplifier recipe.
pub const AMPLIFIER_RECIPE: [[u64; 3]; 3] = [[0, 1, 0], [0, 1, 1], [1, 1, 1]];

/// D(v) with `d` pendant pairs.
pub fn build_amplifier_gadget(d: usize) -> Result<GadgetInstance> {
    if d == 0 {
        return Err(Error::Precondition("D(v) needs d >= 1".into()));
    }
    let mut b = GraphBuilder::new();
    let v = add_amplifier_unit(&mut b, "v", d, "");
    let pairs: Vec<Predicate> = (1..=d).map(|i| Predicate::AnyOne(vec![format!("v_{i}"), format!("v'_{i}")])).collect();
    let forcing = Predicate::All(vec![
        label("v", 1),
        label("p3", 0),
        Predicate::SumIsOffsetPlus("v".into(), vec!["p4".into(), "p5".into(), "p6".into()]),
        Predicate::Implies(Box::new(label("p5", 0)), Box::new(Predicate::All(pairs))),
    ]);
    let mut contract = GadgetContract::default().clause(
        "forces v=1, p3=0 and covers pairs when p5=0",
        &[("v", PortBoundary::open(0, 7))],
        Expectation::ForAll(forcing),
    );
    for (c, rec) in AMPLIFIER_RECIPE.iter().enumerate() {
        let pred = Predicate::All(vec![label("p4", rec[0]), label("p5", rec[1]), label("p6", rec[2])]);
        contract = contract.clause(format!("color {} recipe extends", c + 1), &[("v", PortBoundary::open(2, 5))], Expectation::Exists(pred));
    }
    certified(finish(b, &[("v", v)], GadgetKind::Amplifier { d }, contract)?, d <= 4)
}

impl GadgetInstance {
    fn check_ports(&self) -> Result<()> {
        let mut seen = BTreeMap::new();
        for (name, &v) in &self.ports {
            if v >= self.graph.n() {
                return Err(Error::UnknownVertex { vertex: v, n: self.graph.n() });
            }
            if let Some(other) = seen.insert(v, name) {
                return Err(Error::Precondition(format!("ports `{other}` and `{name}` share vertex {v}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_triangle_free;

    #[test]
    fn sizes() {
        assert_eq!(build_forcing_gadget().unwrap().graph.n(), 9);
        assert_eq!(build_index_gadget(2).unwrap().graph.n(), 17);
        assert_eq!(build_amplifier_gadget(3).unwrap().internal_vertices(), 13);
        assert_eq!(build_variable_gadget().unwrap().graph.n(), 18);
        assert!(build_index_gadget(1).is_err());
        assert!(build_vertex_gadget(&[4], 3).is_err());
    }

    #[test]
    fn sat_gadgets_triangle_free() {
        assert!(is_triangle_free(&build_variable_gadget().unwrap().graph));
        let c = build_clause_gadget(&[Literal::pos(0), Literal::neg(1), Literal::pos(2)]).unwrap();
        assert!(is_triangle_free(&c.graph));
    }

    #[test]
    fn vertex_gadget_without_exclusions() {
        let g = build_vertex_gadget(&[2, 3], 3).unwrap();
        assert!(g.graph.names().values().all(|n| !n.starts_with('I')));
        assert!(g.certified);
    }
}
