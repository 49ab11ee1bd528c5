use addlab::oracles::{Cnf3Formula, Literal};
use addlab::{
    certificate_verifies, chromatic_number, exists_binary, induced_coloring, is_additive, max_clique, min_ptds,
    solve_eta, solve_eta1, solve_sigma, Graph, GraphBuilder, Labeling, ListAssignment, SearchBudget, Status,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Disjoint union with `h`'s vertices after `g`'s.
fn union(g: &Graph, h: &Graph) -> Graph {
    let mut b = GraphBuilder::new();
    for v in 0..g.n() + h.n() {
        b.add_vertex(format!("u{v}"));
    }
    for &(u, v) in g.edges() {
        b.add_edge(u, v);
    }
    for &(u, v) in h.edges() {
        b.add_edge(u + g.n(), v + g.n());
    }
    b.build().unwrap()
}

fn b() -> SearchBudget {
    SearchBudget::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_reverify(g in graph(7)) {
        for r in [solve_eta(&g, &b()).unwrap(), solve_eta1(&g, &b()).unwrap(),
                  solve_sigma(&g, &b()).unwrap(), min_ptds(&g, &b()).unwrap()] {
            prop_assert_ne!(r.status, Status::BudgetExceeded);
            prop_assert!(certificate_verifies(&g, &r, None));
        }
        let eta = solve_eta(&g, &b()).unwrap();
        prop_assert!(eta.labeling().unwrap().max_label() <= eta.value);
    }

    #[test]
    fn propagation_is_answer_preserving(g in graph(6)) {
        let off = b().without_propagation();
        let pairs = [
            (solve_eta1(&g, &b()).unwrap(), solve_eta1(&g, &off).unwrap()),
            (exists_binary(&g, &b()).unwrap(), exists_binary(&g, &off).unwrap()),
            (min_ptds(&g, &b()).unwrap(), min_ptds(&g, &off).unwrap()),
        ];
        for (a, c) in pairs {
            prop_assert_eq!((a.status, a.value), (c.status, c.value));
        }
    }

    #[test]
    fn eta_of_union_is_max_of_parts(g in graph(5), h in graph(5)) {
        let u = union(&g, &h);
        let e = |x: &Graph| solve_eta(x, &b()).unwrap().value.unwrap();
        prop_assert_eq!(e(&u), e(&g).max(e(&h)));
    }

    #[test]
    fn binary_existence_matches_eta1(g in graph(7)) {
        let found = exists_binary(&g, &b()).unwrap().status == Status::Found;
        prop_assert_eq!(found, solve_eta1(&g, &b()).unwrap().status == Status::Found);
    }

    #[test]
    fn eta1_at_least_chi_minus_one(g in graph(7)) {
        let chi = chromatic_number(&g).0 as u64;
        if let Some(w) = solve_eta1(&g, &b()).unwrap().value {
            prop_assert!(w + 1 >= chi);
        }
    }

    #[test]
    fn sigma_at_most_chi_and_eta(g in graph(7)) {
        let s = solve_sigma(&g, &b()).unwrap().value.unwrap();
        prop_assert!(s <= chromatic_number(&g).0 as u64);
        prop_assert!(s <= solve_eta(&g, &b()).unwrap().value.unwrap());
    }

    #[test]
    fn isolated_vertices_do_not_change_eta(g in graph(6), extra in 1usize..3) {
        let e = |x: &Graph| solve_eta(x, &b()).unwrap().value;
        prop_assert_eq!(e(&g), e(&g.with_isolated(extra)));
    }
}

proptest! {
    #[test]
    fn clique_below_chromatic(g in graph(9)) {
        let (w, clique) = max_clique(&g);
        let (chi, col) = chromatic_number(&g);
        prop_assert!(w <= chi);
        prop_assert!(clique.iter().all(|&a| clique.iter().all(|&c| a == c || g.has_edge(a, c))));
        prop_assert!(g.edges().iter().all(|&(u, v)| col[u] != col[v]));
        prop_assert!(col.iter().all(|&c| (1..=chi).contains(&c)));
    }

    #[test]
    fn degree_sum_is_twice_edges(g in graph(12)) {
        prop_assert_eq!(g.degree_sequence().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn dimacs_round_trip(g in graph(12)) {
        prop_assert_eq!(Graph::from_dimacs(&g.to_dimacs()).unwrap(), g);
    }

    #[test]
    fn labeling_round_trip(values in prop::collection::vec(0u64..1000, 0..20)) {
        let l = Labeling::from_vec(&values);
        prop_assert_eq!(Labeling::from_text(&l.to_text()).unwrap(), l);
    }

    #[test]
    fn list_round_trip(lists in prop::collection::vec(prop::collection::btree_set(1u64..50, 1..5), 1..10)) {
        let l = ListAssignment::from_lists(lists.into_iter().map(|s| s.into_iter().collect()).collect());
        prop_assert_eq!(ListAssignment::from_text(&l.to_text()).unwrap(), l);
    }

    #[test]
    fn cnf_round_trip(nv in 1usize..6, raw in prop::collection::vec(prop::collection::vec((0usize..6, any::<bool>()), 1..=3), 1..6)) {
        let clauses = raw
            .into_iter()
            .map(|c| c.into_iter().map(|(v, neg)| Literal { var: v % nv, negated: neg }).collect())
            .collect();
        let f = Cnf3Formula::new(nv, clauses).unwrap();
        prop_assert_eq!(Cnf3Formula::from_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn additive_labelings_induce_proper_colorings(g in graph(8), seed in any::<u64>()) {
        let values: Vec<u64> = (0..g.n() as u64).map(|v| (seed >> (v % 60)) % 4 + 1).collect();
        let l = Labeling::from_vec(&values);
        if is_additive(&g, &l) {
            let c = induced_coloring(&g, &l).unwrap();
            prop_assert!(g.edges().iter().all(|&(u, v)| c[u] != c[v]));
        }
    }
}
