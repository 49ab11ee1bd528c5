//! Graph families, gadgets and reductions.

mod contract;
mod families;
mod gadgets;
mod reductions;

use std::collections::BTreeMap;
use std::fmt;

pub use contract::{
    certify_gadget, certify_with_cap, CertificationReport, ContractClause, Countermodel, Expectation, GadgetContract,
    PortBoundary, Predicate, DEFAULT_ENUMERATION_CAP,
};
pub use families::{clique_eta_one, counterexample_graph, Counterexample};
pub use gadgets::{
    build_amplifier_gadget, build_clause_gadget, build_forcing_gadget, build_index_gadget, build_variable_gadget,
    build_vertex_gadget, AMPLIFIER_RECIPE,
};
pub use reductions::{
    amplifier_size, build_inapprox_reduction, build_listcoloring_reduction, build_sat_reduction, normalize_lists,
    paper_amplifier_d, ReductionOutput,
};

use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    Clause { literals: usize },
    Variable,
    Amplifier { d: usize },
    Forcing,
    Index { j: usize },
    Vertex { list: Vec<u64>, s: u64 },
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetKind::Clause { literals } => write!(f, "A(c) with {literals} literal(s)"),
            GadgetKind::Variable => f.write_str("B(x)"),
            GadgetKind::Amplifier { d } => write!(f, "D(v) d={d}"),
            GadgetKind::Forcing => f.write_str("T(w)"),
            GadgetKind::Index { j } => write!(f, "I({j})"),
            GadgetKind::Vertex { list, s } => write!(f, "G(v,{list:?},{s})"),
        }
    }
}

/// A gadget graph with named ports and the contract it must satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub ports: BTreeMap<String, Vertex>,
    pub kind: GadgetKind,
    pub contract: GadgetContract,
    /// Whether the contract was certified when the gadget was built.
    pub certified: bool,
}

impl GadgetInstance {
    pub fn port(&self, name: &str) -> Option<Vertex> {
        self.ports.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.port(name).or_else(|| self.graph.vertex_named(name))
    }

    pub fn internal_vertices(&self) -> usize {
        self.graph.n() - self.ports.len()
    }

    /// Copy with one edge deleted and the same contract, for negative controls.
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> GadgetInstance {
        let edges = self.graph.edges().iter().copied().filter(|&e| e != (u.min(v), u.max(v)));
        let graph = Graph::new(self.graph.n(), edges, Some(self.graph.names().clone())).expect("subgraph of a valid graph");
        GadgetInstance { graph, certified: false, ..self.clone() }
    }
}

/// Graphviz export with vertex names as labels.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let name = g.name(v).map(str::to_string).unwrap_or_else(|| v.to_string());
        out.push_str(&format!("  {v} [label=\"{}\"];\n", name.replace('"', "\\\"")));
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
