//! The top-level flow theorems as pipelines that return a verified flow and
//! the chain of case labels that produced it.

mod cubic;
mod hamiltonian;
mod planar;

use std::fmt;

pub use cubic::{cubic_flow, exceptional_condition};
pub use hamiltonian::{hamilton_circuit, hamiltonian_flow};
pub use planar::{blow_up, planar_flow, suppress, BlowUp, Gadget, Reduction};

use crate::error::{FlowError, Result};
use crate::graph::{verify_flow, IntFlow, Orientation, SignedGraph};

/// Case labels in the order the pipeline visited them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaseTrace(pub Vec<String>);

impl CaseTrace {
    pub fn push(&mut self, label: impl Into<String>) {
        self.0.push(label.into());
    }

    pub fn last(&self) -> Option<&str> {
        self.0.last().map(String::as_str)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.iter().any(|l| l == label)
    }
}

impl fmt::Display for CaseTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(" / "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub flow: IntFlow,
    /// Bound claimed by the branch taken; the flow verifies at this k.
    pub k: i32,
    pub trace: CaseTrace,
    pub exceptional: bool,
}

fn finish(
    g: &SignedGraph,
    tau: &Orientation,
    values: Vec<i32>,
    k: i32,
    trace: CaseTrace,
    exceptional: bool,
) -> Result<FlowResult> {
    let flow = IntFlow::with_bound(tau.clone(), values, k);
    let report = verify_flow(g, &flow, true);
    if !report.is_valid() {
        return Err(FlowError::Postcondition(format!("{trace}: {report}")));
    }
    Ok(FlowResult { flow, k, trace, exceptional })
}

fn add_scaled(acc: &mut [i32], c: i32, values: &[i32]) {
    for (a, v) in acc.iter_mut().zip(values) {
        *a += c * v;
    }
}
