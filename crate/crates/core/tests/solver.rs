use std::time::Duration;

use addlab::constructions::{clique_eta_one, counterexample_graph};
use addlab::oracles::sweeps::{odd_cycle_sweep, oracle_sweep, random_graphs};
use addlab::oracles::{eta1_brute, eta_brute, ptds_brute, sigma_brute};
use addlab::{
    certificate_verifies, decide_list_additive, exists_binary, max_clique, min_ptds, refute_lists, solve_eta,
    solve_eta1, solve_sigma, weight, Graph, ListAssignment, Refutation, SearchBudget, Status,
};

fn b() -> SearchBudget {
    SearchBudget::default()
}

#[test]
fn eta_of_named_graphs() {
    assert_eq!(solve_eta(&Graph::path(3), &b()).unwrap().value, Some(1));
    for n in 2..=6 {
        assert_eq!(solve_eta(&Graph::complete(n), &b()).unwrap().value, Some(n as u64));
    }
    assert_eq!(solve_eta(&Graph::cycle(5), &b()).unwrap().value, Some(3));
    assert_eq!(solve_eta(&Graph::petersen(), &b()).unwrap().value, Some(2));
}

#[test]
fn clique_number_does_not_bound_eta() {
    for n in 1..=5 {
        let g = clique_eta_one(n);
        assert_eq!(max_clique(&g).0, n);
        let r = solve_eta(&g, &b()).unwrap();
        assert_eq!(r.value, Some(1));
        assert!(certificate_verifies(&g, &r, None));
    }
}

#[test]
fn counterexample_eta_and_list_refutation() {
    for k in 1..=2 {
        let c = counterexample_graph(k);
        let r = solve_eta(&c.graph, &b()).unwrap();
        assert_eq!(r.value, Some(k as u64));
        match refute_lists(&c.graph, &c.lists, &b()).unwrap() {
            Refutation::Refuted { list_size, .. } => assert_eq!(list_size, 2 * k - 1),
            other => panic!("k={k}: {other:?}"),
        }
    }
    // k = 1 is small enough for the brute oracle.
    assert_eq!(eta_brute(&counterexample_graph(1).graph).unwrap().0, 1);
}

#[test]
fn odd_cycles_have_no_binary_labeling() {
    for (n, status, ok) in odd_cycle_sweep(&b()).unwrap() {
        assert!(ok, "C{n}: {status}");
    }
    assert_eq!(exists_binary(&Graph::cycle(5), &b()).unwrap().status, Status::Infeasible);
}

#[test]
fn eta1_and_ptds_examples() {
    let p = Graph::petersen();
    let r = solve_eta1(&p, &b()).unwrap();
    assert_eq!(r.value, eta1_brute(&p).unwrap().map(|x| x.0));
    assert!(certificate_verifies(&p, &r, None));
    assert_eq!(weight(r.labeling().unwrap()), r.value.unwrap());
    let c4 = Graph::cycle(4);
    assert_eq!(min_ptds(&c4, &b()).unwrap().value, Some(3));
    assert_eq!(min_ptds(&Graph::complete(2), &b()).unwrap().status, Status::Infeasible);
    assert_eq!(ptds_brute(&c4).unwrap().unwrap().len(), 3);
}

#[test]
fn sigma_examples() {
    assert_eq!(solve_sigma(&Graph::cycle(5), &b()).unwrap().value, Some(3));
    assert_eq!(solve_sigma(&Graph::path(4), &b()).unwrap().value, Some(2));
    assert_eq!(solve_sigma(&Graph::complete(5), &b()).unwrap().value, Some(5));
    let r = solve_sigma(&Graph::petersen(), &b()).unwrap();
    assert!(certificate_verifies(&Graph::petersen(), &r, None));
    assert!(r.label_cap.is_some());
}

#[test]
fn weight_cap_makes_binary_search_infeasible() {
    let g = Graph::cycle(4);
    let best = solve_eta1(&g, &b()).unwrap().value.unwrap();
    assert_eq!(exists_binary(&g, &b().with_weight_cap(best)).unwrap().status, Status::Found);
    assert_eq!(exists_binary(&g, &b().with_weight_cap(best - 1)).unwrap().status, Status::Infeasible);
}

#[test]
fn lists_decide() {
    let k2 = Graph::complete(2);
    let r = decide_list_additive(&k2, &ListAssignment::uniform(2, &[1, 2]), &b()).unwrap();
    // On K2 each sum is the other endpoint's label.
    assert_eq!(r.status, Status::Found);
    let same = decide_list_additive(&k2, &ListAssignment::uniform(2, &[4]), &b()).unwrap();
    assert_eq!(same.status, Status::Infeasible);
    assert!(decide_list_additive(&k2, &ListAssignment::uniform(1, &[1]), &b()).is_err());
}

#[test]
fn budget_exhaustion_is_reported() {
    let tight = SearchBudget::nodes(3);
    let r = solve_eta(&Graph::petersen(), &tight).unwrap();
    assert_eq!(r.status, Status::BudgetExceeded);
    assert_eq!(r.value, None);
    let zero = SearchBudget { max_time: Duration::ZERO, ..b() };
    assert!(solve_eta(&Graph::path(2), &zero).is_err());
    assert!(solve_eta(&Graph::empty(0), &b()).is_err());
}

#[test]
fn propagation_does_not_change_answers() {
    let plain = b().without_propagation();
    for g in random_graphs(5, 40, 6) {
        let a = solve_eta(&g, &b()).unwrap();
        let c = solve_eta(&g, &plain).unwrap();
        assert_eq!((a.status, a.value), (c.status, c.value));
        let a = min_ptds(&g, &b()).unwrap();
        let c = min_ptds(&g, &plain).unwrap();
        assert_eq!((a.status, a.value), (c.status, c.value));
    }
}

#[test]
fn solvers_match_full_enumeration() {
    let rows = oracle_sweep(2024, 200, 6, 1, &b()).unwrap();
    assert_eq!(rows.len(), 200);
    for r in &rows {
        assert!(r.agrees(), "{}", r.to_json());
    }
    // The family is not degenerate.
    assert!(rows.iter().any(|r| r.eta1.1.is_none()));
    assert!(rows.iter().any(|r| r.eta.1 >= 3));
}

#[test]
fn brute_sigma_agrees_on_named_graphs() {
    for g in [Graph::cycle(5), Graph::path(5), Graph::complete(4), Graph::octahedron()] {
        assert_eq!(solve_sigma(&g, &b()).unwrap().value, Some(sigma_brute(&g).unwrap().0));
    }
}
