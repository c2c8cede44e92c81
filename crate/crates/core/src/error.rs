use thiserror::Error;

use crate::preimage::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {edge} out of range (m = {m})")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid witness: {0}")]
    InvalidWitness(Violation),
    #[error("size guard: {what} is {actual}, limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
