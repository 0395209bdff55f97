use thiserror::Error;

use crate::multigraph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    Degree { vertex: VertexId, degree: usize },
    #[error("edge {edge} would be a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: VertexId },
    #[error("vertex count {0} must be even and at least 2")]
    Parity(usize),
    #[error("invalid state: {0}")]
    State(String),
    #[error("structure violated: {0}")]
    Structure(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("invalid argument: {0}")]
    Arg(String),
    #[error("graph with {n} vertices exceeds the limit of {limit}")]
    Size { n: usize, limit: usize },
    #[error("no alternating cycle through edge {0}")]
    NotFound(EdgeId),
    #[error("graph has parallel edges; this operation needs a simple graph")]
    Multigraph,
}

impl Error {
    pub(crate) fn state(msg: impl Into<String>) -> Self {
        Error::State(msg.into())
    }

    pub(crate) fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }
}
