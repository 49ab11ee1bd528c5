use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop edge ({0}, {0}) is not allowed in a simple graph")]
    LoopEdge(usize),

    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },

    #[error("vertex {0} has no label")]
    MissingLabel(usize),

    #[error("vertex {0} has an empty list")]
    EmptyList(usize),

    #[error("vertex {vertex} does not exist in a graph with {n} vertices")]
    UnknownVertex { vertex: usize, n: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("labeling is not additive: {0} violated edge(s)")]
    NotAdditive(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("gadget contract failed: {0}")]
    ContractFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
