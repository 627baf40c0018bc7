//! Circuits, paths and trails, and the unit flows they carry.
//!
//! Pushing a value along a trail fixes each edge value from the previous one so
//! that the two half edges meeting at every intermediate vertex cancel. Only the
//! two ends of the trail (or the start of a closed trail whose negative-edge
//! count is odd) are left with a nonzero boundary.

use std::collections::BTreeSet;

use crate::error::{FlowError, Result};
use crate::graph::{EdgeId, EdgeSet, Orientation, SignedGraph, VertexId};

/// Traversal of one edge, leaving through half edge `from_end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: EdgeId,
    pub from_end: u8,
}

impl Step {
    pub fn from(&self, g: &SignedGraph) -> VertexId {
        g.edge(self.edge).endpoint(self.from_end)
    }

    pub fn to(&self, g: &SignedGraph) -> VertexId {
        g.edge(self.edge).endpoint(1 - self.from_end)
    }

    pub fn leaving(g: &SignedGraph, edge: EdgeId, at: VertexId) -> Step {
        let from_end = if g.edge(edge).u == at { 0 } else { 1 };
        Step { edge, from_end }
    }

    pub fn reversed(self) -> Step {
        Step {
            edge: self.edge,
            from_end: 1 - self.from_end,
        }
    }
}

/// Closed circuit `vertices[0] -edges[0]- vertices[1] - ... - vertices[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Circuit {
    pub fn new(vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Circuit {
        Circuit { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().copied().collect()
    }

    pub fn negative_count(&self, g: &SignedGraph) -> usize {
        g.negative_count(&self.edges)
    }

    pub fn is_balanced(&self, g: &SignedGraph) -> bool {
        self.negative_count(g).is_multiple_of(2)
    }

    /// Checks that consecutive edges really join consecutive vertices and that
    /// no vertex or edge repeats.
    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        let n = self.edges.len();
        if n == 0 || self.vertices.len() != n {
            return Err(FlowError::MalformedCircuit("length mismatch".into()));
        }
        if self.vertex_set().len() != n || self.edge_set().len() != n {
            return Err(FlowError::MalformedCircuit("repeated vertex or edge".into()));
        }
        for i in 0..n {
            let e = g.edge(self.edges[i]);
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            if !((e.u == a && e.v == b) || (e.u == b && e.v == a)) {
                return Err(FlowError::MalformedCircuit(format!(
                    "edge {} does not join {a} and {b}",
                    self.edges[i]
                )));
            }
        }
        Ok(())
    }

    /// Same circuit, traversed from `v`.
    pub fn rotated_to(&self, v: VertexId) -> Option<Circuit> {
        let i = self.vertices.iter().position(|&w| w == v)?;
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.rotate_left(i);
        edges.rotate_left(i);
        Some(Circuit { vertices, edges })
    }

    pub fn steps(&self, g: &SignedGraph) -> Vec<Step> {
        self.edges
            .iter()
            .zip(&self.vertices)
            .map(|(&e, &v)| Step::leaving(g, e, v))
            .collect()
    }
}

/// Path `vertices[0] -edges[0]- ... - vertices[last]`; may be trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("path has a vertex")
    }

    pub fn steps(&self, g: &SignedGraph) -> Vec<Step> {
        self.edges
            .iter()
            .zip(&self.vertices)
            .map(|(&e, &v)| Step::leaving(g, e, v))
            .collect()
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.reverse();
        edges.reverse();
        Path { vertices, edges }
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        if self.vertices.len() != self.edges.len() + 1 {
            return Err(FlowError::MalformedCircuit("path length mismatch".into()));
        }
        let vs: BTreeSet<_> = self.vertices.iter().collect();
        if vs.len() != self.vertices.len() {
            return Err(FlowError::MalformedCircuit("path repeats a vertex".into()));
        }
        for (i, &e) in self.edges.iter().enumerate() {
            let edge = g.edge(e);
            let (a, b) = (self.vertices[i], self.vertices[i + 1]);
            if !((edge.u == a && edge.v == b) || (edge.u == b && edge.v == a)) {
                return Err(FlowError::MalformedCircuit(format!(
                    "path edge {e} does not join {a} and {b}"
                )));
            }
        }
        Ok(())
    }
}

/// Values along a trail starting with `first` on the first edge, such that
/// every interior visit of a vertex is balanced.
pub fn trail_values(tau: &Orientation, steps: &[Step], first: i32) -> Vec<(EdgeId, i32)> {
    let mut out = Vec::with_capacity(steps.len());
    let mut value = first;
    for (i, s) in steps.iter().enumerate() {
        if i > 0 {
            let prev = steps[i - 1];
            let t_in = tau.get(crate::graph::HalfEdge {
                edge: prev.edge,
                end: 1 - prev.from_end,
            });
            let t_out = tau.get(crate::graph::HalfEdge {
                edge: s.edge,
                end: s.from_end,
            });
            value *= -t_out * t_in;
        }
        out.push((s.edge, value));
    }
    out
}

/// Full value vector for a trail (other edges 0). Edges traversed twice add up.
pub fn trail_flow(g: &SignedGraph, tau: &Orientation, steps: &[Step], first: i32) -> Vec<i32> {
    let mut values = vec![0; g.edge_count()];
    for (e, v) in trail_values(tau, steps, first) {
        values[e] += v;
    }
    values
}

/// Boundary that a trail's values leave at its start vertex through its first
/// half edge (and, for a closed trail, its last arriving half edge).
pub fn start_contribution(tau: &Orientation, steps: &[Step], values: &[i32]) -> i32 {
    let s = steps[0];
    tau.get(crate::graph::HalfEdge {
        edge: s.edge,
        end: s.from_end,
    }) * values[s.edge]
}

pub fn end_contribution(tau: &Orientation, steps: &[Step], values: &[i32]) -> i32 {
    let s = *steps.last().expect("nonempty trail");
    tau.get(crate::graph::HalfEdge {
        edge: s.edge,
        end: 1 - s.from_end,
    }) * values[s.edge]
}

/// Closed Euler trail through every edge of `edges`, which must form one
/// connected subgraph with all degrees even. Starts at `start`.
pub fn euler_tour(g: &SignedGraph, edges: &EdgeSet, start: VertexId) -> Result<Vec<Step>> {
    let mut adj: Vec<Vec<(EdgeId, u8)>> = vec![Vec::new(); g.vertex_count()];
    for &e in edges {
        adj[g.edge(e).u].push((e, 0));
        adj[g.edge(e).v].push((e, 1));
    }
    for (v, a) in adj.iter().enumerate() {
        if a.len() % 2 == 1 {
            return Err(FlowError::NotEulerian(v));
        }
    }
    let mut used = vec![false; g.edge_count()];
    let mut ptr = vec![0usize; g.vertex_count()];
    let mut stack: Vec<(VertexId, Option<Step>)> = vec![(start, None)];
    let mut out = Vec::with_capacity(edges.len());
    while let Some(&(v, _)) = stack.last() {
        while ptr[v] < adj[v].len() && used[adj[v][ptr[v]].0] {
            ptr[v] += 1;
        }
        if ptr[v] < adj[v].len() {
            let (e, end) = adj[v][ptr[v]];
            used[e] = true;
            let step = Step { edge: e, from_end: end };
            stack.push((step.to(g), Some(step)));
        } else {
            let (_, s) = stack.pop().expect("nonempty");
            if let Some(s) = s {
                out.push(s);
            }
        }
    }
    out.reverse();
    if out.len() != edges.len() {
        return Err(FlowError::Precondition(
            "edge set is not connected through the start vertex".into(),
        ));
    }
    Ok(out)
}
