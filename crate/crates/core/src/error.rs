use thiserror::Error;

/// Errors raised by graph construction, parsing and the invariant solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{n} vertices exceeds the exhaustive-search cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("vertex set is not a block of the graph")]
    NotABlock,

    #[error("malformed formula: {0}")]
    Formula(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn param(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}
