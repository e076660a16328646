use thiserror::Error;

use crate::hypercore::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("hyperedge {edge} has {size} distinct vertices; at least 2 are required")]
    EdgeTooSmall { edge: usize, size: usize },

    #[error("vertex index {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("hyperedge index {edge} out of range for {m} hyperedges")]
    EdgeOutOfRange { edge: usize, m: usize },

    #[error("duplicate vertex name `{0}`")]
    DuplicateName(String),

    #[error("unknown vertex name `{0}`")]
    UnknownName(String),

    #[error("invalid trimming choice for hyperedge {edge}: {reason}")]
    InvalidChoice { edge: usize, reason: String },

    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),

    #[error("invalid dyperedge {arc}: {reason}")]
    InvalidDyperedge { arc: usize, reason: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("scale guard exceeded: {0}")]
    ScaleGuard(String),

    #[error("invalid terminal set: {0}")]
    InvalidTerminals(String),

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("assignment covers {got} variables, formula has {expected}")]
    PartialAssignment { expected: usize, got: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("construction failed: {0}")]
    ConstructionFailure(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
