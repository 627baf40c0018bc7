//! Constructive nowhere-zero flows on signed graphs.

pub mod analysis;
pub mod coloring;
pub mod error;
pub mod families;
pub mod flows;
pub mod graph;
pub mod oracle;
pub mod search;
pub mod theorems;
pub mod walk;

pub use error::{FlowError, Result};
pub use graph::{
    boundaries, boundary, combine_flows, contract, switch, verify_flow, Contraction, Edge, EdgeId,
    EdgeSet, FlowReport, HalfEdge, IntFlow, ModFlow, Orientation, Sign, SignedGraph, Switched,
    VertexId,
};
