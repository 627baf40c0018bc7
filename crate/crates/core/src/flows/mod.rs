//! Flow constructions: eulerian 2-flows, signed circuits, closures and lifts,
//! odd-component 5-flows, circuit covers and extension through contraction.

mod cover;
mod eulerian;
mod extend;
mod lift;
mod odd;
mod phi2;

pub use cover::{cover_circuit_4flow, minimal_cosegment_cover, CosegmentCover, CoverBranch, CoverFlow};
pub use eulerian::{
    signed_circuit_flow, two_flow, two_flow_eulerian, SignedCircuit, SignedCircuitKind, TwoFlow,
};
pub use extend::{extend_flow_contraction, extend_through_circuit};
pub use lift::{lift_z2_to_3flow, lift_z3_to_4flow};
pub use odd::five_flow_odd_components;
pub use phi2::{phi2_closure, z3_flow_phi2, Phi2Certificate, Phi2Step};

use crate::error::{FlowError, Result};
use crate::graph::{verify_flow, IntFlow, SignedGraph};

/// Rejects a constructed flow that fails verification.
pub(crate) fn checked(g: &SignedGraph, flow: IntFlow, what: &str) -> Result<IntFlow> {
    let report = verify_flow(g, &flow, false);
    if report.is_valid() {
        Ok(flow)
    } else {
        Err(FlowError::Postcondition(format!("{what}: {report}")))
    }
}
