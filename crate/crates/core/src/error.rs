use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("size guard exceeded: {candidates} candidates over cap {cap}")]
    SizeGuard { candidates: u128, cap: u128 },
    #[error("audit failure: {0}")]
    Audit(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
