//! Exact solvers, constructions and verification harnesses for additive
//! (lucky) vertex labelings.
//!
//! A labeling ℓ is additive when adjacent vertices have different neighbor
//! sums S(v) = Σ_{w ∈ N(v)} ℓ(w).

pub mod bits;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod labeling;
pub mod oracles;
pub mod solver;

pub use bounds::{bounds_report, clique_ratio_bound, regular_bound, BoundsReport};
pub use error::{Error, Result};
pub use graph::{chromatic_number, is_triangle_free, max_clique, regularity, Graph, GraphBuilder, Vertex};
pub use labeling::{
    induced_coloring, is_additive, neighbor_sum, verify_additive, verify_additive_in, verify_from_lists, verify_ptds,
    weight, LabelMode, Labeling, ListAssignment, Violation,
};
pub use oracles::{Cnf3Formula, EquivalenceVerdict, Literal};
pub use solver::{
    certificate_verifies, decide_list_additive, exists_binary, min_ptds, refute_lists, solve_eta, solve_eta1,
    solve_sigma, Certificate, Refutation, SearchBudget, SolveReport, Status,
};
