use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("flows refer to different orientations")]
    MixedOrientations,
    #[error("orientation inconsistent with the signature on edges {0:?}")]
    BadOrientation(Vec<EdgeId>),
    #[error("edge subset is not eulerian at vertex {0}")]
    NotEulerian(VertexId),
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("graph is not cubic (vertex {0} has degree {1})")]
    NotCubic(VertexId, usize),
    #[error("graph has a loop (edge {0})")]
    HasLoop(EdgeId),
    #[error("graph has a bridge (edge {0})")]
    HasBridge(EdgeId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not 3-edge-colorable")]
    NotColorable,
    #[error("graph is not flow-admissible: {0}")]
    NotAdmissible(String),
    #[error("malformed signed circuit: {0}")]
    MalformedCircuit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search exhausted without a solution: {0}")]
    SearchExhausted(String),
    #[error("construction failed its own postcondition: {0}")]
    Postcondition(String),
}

pub type Result<T> = std::result::Result<T, FlowError>;
