use std::collections::BTreeSet;

use super::checked;
use crate::analysis::{support_components, SupportComponent};
use crate::error::{FlowError, Result};
use crate::graph::{boundaries, EdgeSet, IntFlow, Orientation, SignedGraph};
use crate::walk::{euler_tour, trail_flow, Circuit, Path};

/// Outcome of [`two_flow_eulerian`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoFlow {
    Flow(IntFlow),
    /// A component with an odd number of negative edges; no 2-flow exists.
    OddComponent(SupportComponent),
}

/// 2-flow with support exactly `support`, walking an Euler tour of each
/// component with value 1, or the odd component that rules it out.
pub fn two_flow_eulerian(g: &SignedGraph, tau: &Orientation, support: &EdgeSet) -> Result<TwoFlow> {
    let comps = support_components(g, support)?;
    if let Some(odd) = comps.components.iter().find(|c| c.is_odd()) {
        return Ok(TwoFlow::OddComponent(odd.clone()));
    }
    let mut values = vec![0; g.edge_count()];
    for comp in &comps.components {
        let start = *comp.vertices.iter().next().expect("nonempty");
        let tour = euler_tour(g, &comp.edges, start)?;
        for (acc, v) in values.iter_mut().zip(trail_flow(g, tau, &tour, 1)) {
            *acc += v;
        }
    }
    let flow = IntFlow::with_bound(tau.clone(), values, 2);
    Ok(TwoFlow::Flow(checked(g, flow, "2-flow")?))
}

/// [`two_flow_eulerian`] for callers that already know every component is even.
pub fn two_flow(g: &SignedGraph, tau: &Orientation, support: &EdgeSet) -> Result<IntFlow> {
    match two_flow_eulerian(g, tau, support)? {
        TwoFlow::Flow(f) => Ok(f),
        TwoFlow::OddComponent(c) => Err(FlowError::Precondition(format!(
            "support component at vertex {} has odd negative count",
            c.vertices.iter().next().expect("nonempty")
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignedCircuitKind {
    Balanced,
    ShortBarbell,
    LongBarbell,
}

/// Balanced circuit, or two unbalanced circuits sharing one vertex, or two
/// disjoint unbalanced circuits joined by a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCircuit {
    pub kind: SignedCircuitKind,
    pub circuits: Vec<Circuit>,
    pub path: Option<Path>,
}

impl SignedCircuit {
    pub fn balanced(c: Circuit) -> Self {
        SignedCircuit { kind: SignedCircuitKind::Balanced, circuits: vec![c], path: None }
    }

    pub fn short_barbell(c1: Circuit, c2: Circuit) -> Self {
        SignedCircuit { kind: SignedCircuitKind::ShortBarbell, circuits: vec![c1, c2], path: None }
    }

    /// `path` runs from a vertex of `c1` to a vertex of `c2`.
    pub fn long_barbell(c1: Circuit, path: Path, c2: Circuit) -> Self {
        SignedCircuit {
            kind: SignedCircuitKind::LongBarbell,
            circuits: vec![c1, c2],
            path: Some(path),
        }
    }

    pub fn edge_set(&self) -> EdgeSet {
        let mut s: EdgeSet = self.circuits.iter().flat_map(|c| c.edges.iter().copied()).collect();
        if let Some(p) = &self.path {
            s.extend(p.edges.iter().copied());
        }
        s
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        let bad = |m: &str| Err(FlowError::MalformedCircuit(m.to_string()));
        for c in &self.circuits {
            c.validate(g)?;
        }
        match self.kind {
            SignedCircuitKind::Balanced => {
                if self.circuits.len() != 1 || self.path.is_some() {
                    return bad("balanced kind needs one circuit and no path");
                }
                if !self.circuits[0].is_balanced(g) {
                    return bad("circuit is unbalanced");
                }
            }
            SignedCircuitKind::ShortBarbell | SignedCircuitKind::LongBarbell => {
                if self.circuits.len() != 2 {
                    return bad("barbell needs two circuits");
                }
                if self.circuits.iter().any(|c| c.is_balanced(g)) {
                    return bad("barbell circuit is balanced");
                }
                let (a, b) = (self.circuits[0].vertex_set(), self.circuits[1].vertex_set());
                let shared: BTreeSet<_> = a.intersection(&b).copied().collect();
                if self.kind == SignedCircuitKind::ShortBarbell {
                    if shared.len() != 1 || self.path.is_some() {
                        return bad("short barbell circuits must share exactly one vertex");
                    }
                } else {
                    if !shared.is_empty() {
                        return bad("long barbell circuits must be disjoint");
                    }
                    let Some(p) = &self.path else {
                        return bad("long barbell needs a path");
                    };
                    p.validate(g)?;
                    if p.edges.is_empty() || !a.contains(&p.start()) || !b.contains(&p.end()) {
                        return bad("path must join the two circuits");
                    }
                    let inner = &p.vertices[1..p.vertices.len() - 1];
                    if inner.iter().any(|v| a.contains(v) || b.contains(v)) {
                        return bad("path meets a circuit internally");
                    }
                }
            }
        }
        Ok(())
    }
}

/// Flow on a signed circuit: circuit edges ±1, path edges ±2.
pub fn signed_circuit_flow(g: &SignedGraph, tau: &Orientation, sc: &SignedCircuit) -> Result<IntFlow> {
    sc.validate(g)?;
    let m = g.edge_count();
    let values = match sc.kind {
        SignedCircuitKind::Balanced => trail_flow(g, tau, &sc.circuits[0].steps(g), 1),
        SignedCircuitKind::ShortBarbell => {
            let w = *sc.circuits[0]
                .vertex_set()
                .intersection(&sc.circuits[1].vertex_set())
                .next()
                .expect("shared vertex");
            let f1 = circuit_at(g, tau, &sc.circuits[0], w);
            let f2 = circuit_at(g, tau, &sc.circuits[1], w);
            let (b1, b2) = (boundaries(g, tau, &f1)[w], boundaries(g, tau, &f2)[w]);
            let s = if b1 + b2 == 0 { 1 } else { -1 };
            (0..m).map(|e| f1[e] + s * f2[e]).collect()
        }
        SignedCircuitKind::LongBarbell => {
            let p = sc.path.as_ref().expect("validated");
            let fp = trail_flow(g, tau, &p.steps(g), 2);
            let bp = boundaries(g, tau, &fp);
            let f1 = circuit_at(g, tau, &sc.circuits[0], p.start());
            let f2 = circuit_at(g, tau, &sc.circuits[1], p.end());
            let b1 = boundaries(g, tau, &f1)[p.start()];
            let b2 = boundaries(g, tau, &f2)[p.end()];
            let s1 = if b1 + bp[p.start()] == 0 { 1 } else { -1 };
            let s2 = if b2 + bp[p.end()] == 0 { 1 } else { -1 };
            (0..m).map(|e| fp[e] + s1 * f1[e] + s2 * f2[e]).collect()
        }
    };
    checked(g, IntFlow::new(tau.clone(), values), "signed circuit flow")
}

fn circuit_at(g: &SignedGraph, tau: &Orientation, c: &Circuit, v: usize) -> Vec<i32> {
    let c = c.rotated_to(v).expect("vertex on circuit");
    trail_flow(g, tau, &c.steps(g), 1)
}
