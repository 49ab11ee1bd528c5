use addlab::constructions::*;
use addlab::oracles::Literal;
use addlab::{exists_binary, GraphBuilder, SearchBudget};

fn passes(inst: &GadgetInstance) {
    let r = certify_gadget(inst).unwrap();
    assert!(r.passed(), "{}: {:?}", inst.kind, r.countermodels);
    assert!(r.labelings_checked > 0 || inst.contract.clauses.iter().all(|c| c.expect == Expectation::Infeasible));
}

#[test]
fn forcing_and_index_gadgets() {
    passes(&build_forcing_gadget().unwrap());
    for j in 2..=4 {
        let g = build_index_gadget(j).unwrap();
        assert_eq!(g.graph.n(), 1 + 8 * j);
        passes(&g);
    }
}

#[test]
fn vertex_gadgets() {
    let g = build_vertex_gadget(&[2], 3).unwrap();
    assert!(g.graph.vertex_named("I3.u_3").is_some());
    passes(&g);
    passes(&build_vertex_gadget(&[3], 3).unwrap());
    passes(&build_vertex_gadget(&[2, 4], 4).unwrap());
}

#[test]
fn clause_gadget_every_boundary() {
    let lits = [Literal::pos(0), Literal::neg(1), Literal::pos(2)];
    let g = build_clause_gadget(&lits).unwrap();
    assert_eq!(g.contract.clauses.len(), 8);
    passes(&g);
    passes(&build_clause_gadget(&[Literal::pos(0), Literal::pos(0)]).unwrap());
}

#[test]
fn variable_gadget_infeasible_only_at_one_one() {
    let g = build_variable_gadget().unwrap();
    let infeasible: Vec<_> =
        g.contract.clauses.iter().filter(|c| c.expect == Expectation::Infeasible).map(|c| c.name.clone()).collect();
    assert_eq!(infeasible, vec!["ports (1,1)"]);
    passes(&g);
}

#[test]
fn amplifier_gadgets() {
    for d in 1..=3 {
        passes(&build_amplifier_gadget(d).unwrap());
    }
}

#[test]
fn corrupted_variable_gadget_yields_countermodel() {
    let g = build_variable_gadget().unwrap();
    let x = g.port("x").unwrap();
    let y6 = g.vertex("y_x^6").unwrap();
    let bad = g.without_edge(x, y6);
    let r = certify_gadget(&bad).unwrap();
    assert!(!r.passed());
    let c = &r.countermodels[0];
    assert_eq!(c.clause, "ports (1,1)");
    assert!(c.labeling.is_some());
}

#[test]
fn enumeration_cap_is_enforced() {
    let g = build_index_gadget(4).unwrap();
    assert!(certify_with_cap(&g, 20).is_err());
}

#[test]
fn forcing_gadget_in_a_host() {
    // T(w) with one extra pendant on v: the solver's labeling has ℓ(v)=0.
    let t = build_forcing_gadget().unwrap();
    let mut b = GraphBuilder::new();
    b.append(&t.graph, "");
    let p = b.add_vertex("p");
    b.add_edge(p, t.port("v").unwrap());
    let host = b.build().unwrap();
    let r = exists_binary(&host, &SearchBudget::default()).unwrap();
    assert_eq!(r.labeling().unwrap().get(t.port("v").unwrap()), Some(0));
    let w = t.vertex("w").unwrap();
    assert_eq!(r.labeling().unwrap().get(w), Some(1));
}
