use rand::Rng;

use addlab::oracles::sweeps::{bounds_sweep, gadget_suite, listcolor_instances, random_graphs, rng, sat_instances};
use addlab::oracles::*;
use addlab::{
    bounds_report, chromatic_number, clique_ratio_bound, regular_bound, Error, Graph, ListAssignment, SearchBudget,
};

/// Unit propagation plus splitting, written independently of `sat_brute`.
fn dpll(clauses: &[Vec<(usize, bool)>], assign: &mut Vec<Option<bool>>) -> bool {
    loop {
        let mut unit = None;
        for c in clauses {
            let mut open = Vec::new();
            let mut sat = false;
            for &(v, neg) in c {
                match assign[v] {
                    Some(b) if b != neg => sat = true,
                    Some(_) => {}
                    None => open.push((v, neg)),
                }
            }
            if sat {
                continue;
            }
            match open.len() {
                0 => return false,
                1 => unit = Some(open[0]),
                _ => {}
            }
        }
        match unit {
            Some((v, neg)) => assign[v] = Some(!neg),
            None => break,
        }
    }
    let Some(v) = assign.iter().position(Option::is_none) else {
        return true;
    };
    for b in [false, true] {
        let mut next = assign.clone();
        next[v] = Some(b);
        if dpll(clauses, &mut next) {
            *assign = next;
            return true;
        }
    }
    false
}

fn dpll_sat(f: &Cnf3Formula) -> bool {
    let clauses: Vec<Vec<(usize, bool)>> =
        f.clauses().iter().map(|c| c.iter().map(|l| (l.var, l.negated)).collect()).collect();
    dpll(&clauses, &mut vec![None; f.num_vars()])
}

#[test]
fn sat_oracle_matches_dpll() {
    let mut r = rng(17);
    for _ in 0..300 {
        let m = r.gen_range(1..30);
        let f = Cnf3Formula::random(&mut r, 5, m);
        let brute = sat_brute(&f).unwrap();
        assert_eq!(brute.is_some(), dpll_sat(&f), "{f}");
        if let Some(a) = brute {
            assert!(f.is_satisfied_by(&a));
        }
    }
}

#[test]
fn exhaustive_family_is_well_formed() {
    let fam = Cnf3Formula::exhaustive_family(2, 2);
    let mut seen = std::collections::BTreeSet::new();
    for f in &fam {
        assert!(f.num_vars() <= 2 && (1..=2).contains(&f.clauses().len()));
        assert!(f.clauses().iter().all(|c| (1..=3).contains(&c.len())));
        assert!(seen.insert(f.to_dimacs()), "duplicate {f}");
    }
    // Both answers occur.
    assert!(fam.iter().any(|f| sat_brute(f).unwrap().is_none()));
    assert!(fam.iter().any(|f| sat_brute(f).unwrap().is_some()));
    assert_eq!(sat_instances(1, 50).len(), fam.len() + 50);
}

#[test]
fn cnf_parse_errors() {
    let line = |t: &str| match Cnf3Formula::from_dimacs(t) {
        Err(Error::Parse { line, .. }) => line,
        other => panic!("{other:?}"),
    };
    assert_eq!(line("p cnf 2 1\n1 2 -1 2 0\n"), 2);
    assert_eq!(line("c x\np cnf 2 1\n1 3 0\n"), 3);
    assert_eq!(line("1 2 0\n"), 1);
    assert_eq!(line("p cnf 2 1\n1 a 0\n"), 2);
    assert_eq!(line("p cnf 2 2\n1 0\n"), 0);
    assert!(Cnf3Formula::from_dimacs("p cnf 2 1\n1 -2\n0\n").is_ok());
}

#[test]
fn list_oracle_agrees_with_chromatic_number() {
    for g in random_graphs(8, 60, 6) {
        let chi = chromatic_number(&g).0 as u64;
        let upto = |k: u64| ListAssignment::uniform(g.n(), &(1..=k).collect::<Vec<_>>());
        assert!(list_color_brute(&g, &upto(chi)).unwrap().is_some());
        if chi > 1 {
            assert!(list_color_brute(&g, &upto(chi - 1)).unwrap().is_none());
        }
    }
}

#[test]
fn oracle_caps_are_enforced() {
    assert!(matches!(eta1_brute(&Graph::empty(30)), Err(Error::CapExceeded(_))));
    let big = Cnf3Formula::new(SAT_VAR_CAP + 1, vec![vec![Literal::pos(0)]]).unwrap();
    assert!(matches!(sat_brute(&big), Err(Error::CapExceeded(_))));
}

#[test]
fn sat_equivalence_examples() {
    let b = SearchBudget::default();
    let sat = Cnf3Formula::new(3, vec![vec![Literal::pos(0), Literal::neg(1), Literal::pos(2)]]).unwrap();
    let v = check_equivalence_sat(&sat, &b).unwrap();
    assert_eq!((v.oracle, v.reduction), (Answer::Yes, Answer::Yes));
    assert!(v.passed());
    let unsat = Cnf3Formula::new(1, vec![vec![Literal::pos(0)], vec![Literal::neg(0)]]).unwrap();
    let v = check_equivalence_sat(&unsat, &b).unwrap();
    assert_eq!((v.oracle, v.reduction), (Answer::No, Answer::No));
    assert!(v.passed());
}

#[test]
fn assignment_recipe_round_trips() {
    let f = Cnf3Formula::new(2, vec![vec![Literal::pos(0), Literal::pos(1)], vec![Literal::neg(0)]]).unwrap();
    let gamma = [false, true];
    let l = labeling_from_assignment(&f, &gamma).unwrap();
    assert!(addlab::is_additive(&addlab::constructions::build_sat_reduction(&f).unwrap().graph, &l));
    assert_eq!(assignment_from_labeling(&f, &l).unwrap(), gamma.to_vec());
    assert!(labeling_from_assignment(&f, &[true, true]).is_err());
}

#[test]
fn listcolor_worked_instances() {
    let b = SearchBudget::default();
    let expected = [Answer::Yes, Answer::No, Answer::No];
    for ((g, l), want) in listcolor_instances(0, 0).iter().zip(expected) {
        let v = check_equivalence_listcolor(g, l, &b).unwrap();
        assert_eq!(v.oracle, want);
        assert!(v.passed(), "{}", v.to_json());
    }
}

#[test]
fn threshold_cases() {
    let b = SearchBudget::default();
    let tri = check_threshold_inapprox(&Graph::complete(3), 16, &b).unwrap();
    assert_eq!((tri.oracle, tri.reduction), (Answer::Yes, Answer::Yes));
    assert!(tri.passed());
    let k4 = check_threshold_inapprox(&Graph::complete(4), 21, &b).unwrap();
    assert_eq!((k4.oracle, k4.reduction), (Answer::No, Answer::No));
    assert!(k4.passed());
    assert!(check_threshold_inapprox(&Graph::complete(3), 15, &b).is_err());
    assert!(check_threshold_inapprox(&Graph::path(3), 16, &b).is_err());
}

#[test]
fn gadget_suite_catches_the_control() {
    let reports = gadget_suite().unwrap();
    let (control, rest) = reports.split_last().unwrap();
    assert!(rest.iter().all(|r| r.passed()));
    assert!(control.complete && !control.countermodels.is_empty());
}

#[test]
fn par_map_preserves_order() {
    let xs: Vec<u64> = (0..100).collect();
    assert_eq!(par_map(4, &xs, |x| x * x), par_map(1, &xs, |x| x * x));
}

#[test]
fn bound_examples() {
    assert_eq!(clique_ratio_bound(&Graph::complete(6)).unwrap(), 6);
    assert_eq!(clique_ratio_bound(&Graph::path(4)).unwrap(), 1);
    assert!(clique_ratio_bound(&Graph::empty(0)).is_err());
    assert_eq!(regular_bound(&Graph::octahedron()), None);
    assert_eq!(regular_bound(&Graph::complete(3)), Some(3));
    let r = bounds_report(&Graph::octahedron(), &SearchBudget::default()).unwrap();
    assert_eq!((r.omega, r.chi), (3, 3));
    assert!(r.violations().is_empty());
}

#[test]
fn bounds_hold_on_random_graphs() {
    let rows = bounds_sweep(31, 200, 7, 2, &SearchBudget::default()).unwrap();
    for (g, r) in &rows {
        assert!(r.violations().is_empty(), "{:?}: {}", g.edges(), r.to_json());
        assert!(r.eta.is_some() && r.sigma.is_some());
    }
    assert!(rows.iter().any(|(_, r)| r.regular_bound.is_some()));
}
