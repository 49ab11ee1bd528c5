//! Brute-force oracles and reduction equivalence harnesses.

mod brute;
mod cnf;
mod harness;
pub mod sweeps;

pub use brute::{
    eta1_brute, eta_brute, list_color_brute, ptds_brute, random_graph, random_lists, sat_brute, sigma_brute,
    LABELING_CAP, LIST_PRODUCT_CAP, SAT_VAR_CAP,
};
pub use cnf::{Cnf3Formula, Literal};
pub use harness::{
    assignment_from_labeling, check_equivalence_listcolor, check_equivalence_sat, check_threshold_inapprox,
    labeling_from_assignment, labeling_from_coloring, par_map, Answer, EquivalenceVerdict,
};
