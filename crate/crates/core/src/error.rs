use thiserror::Error;

use crate::hypergraph::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("edge {0} already present")]
    EdgeExists(Edge),
    #[error("edge {0} not present")]
    MissingEdge(Edge),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("no convergence: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
