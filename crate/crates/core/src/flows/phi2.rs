use crate::error::{FlowError, Result};
use crate::graph::{EdgeId, EdgeSet, ModFlow, Orientation, Sign, SignedGraph, VertexId};
use crate::walk::{trail_flow, Circuit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phi2Step {
    pub circuit: Circuit,
    /// Edges of the circuit outside the subgraph grown so far (one or two).
    pub new_edges: Vec<EdgeId>,
}

/// Order in which balanced circuits were added while growing `start` to `closure`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phi2Certificate {
    pub start: EdgeSet,
    pub steps: Vec<Phi2Step>,
    pub closure: EdgeSet,
}

impl Phi2Certificate {
    /// Replays the steps and checks every recorded claim.
    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        let mut h = self.start.clone();
        for (i, s) in self.steps.iter().enumerate() {
            s.circuit.validate(g)?;
            let new: Vec<EdgeId> = s.circuit.edges.iter().copied().filter(|e| !h.contains(e)).collect();
            let mut sorted = new.clone();
            sorted.sort_unstable();
            let mut claimed = s.new_edges.clone();
            claimed.sort_unstable();
            if !s.circuit.is_balanced(g) || sorted != claimed || new.is_empty() || new.len() > 2 {
                return Err(FlowError::Postcondition(format!("closure step {i} is not valid")));
            }
            h.extend(new);
        }
        if h != self.closure {
            return Err(FlowError::Postcondition("closure does not match its steps".into()));
        }
        Ok(())
    }
}

/// Greedy closure: repeatedly add the shortest balanced circuit bringing one
/// or two new edges, ties broken by new edge ids and then circuit edge list.
pub fn phi2_closure(g: &SignedGraph, h: &EdgeSet) -> Phi2Certificate {
    let mut current = h.clone();
    let mut steps = Vec::new();
    while let Some(step) = next_step(g, &current) {
        current.extend(step.new_edges.iter().copied());
        steps.push(step);
    }
    Phi2Certificate { start: h.clone(), steps, closure: current }
}

fn next_step(g: &SignedGraph, h: &EdgeSet) -> Option<Phi2Step> {
    let outside: Vec<EdgeId> = g.edge_ids().filter(|e| !h.contains(e)).collect();
    if outside.is_empty() {
        return None;
    }
    if let Some(&e) = outside
        .iter()
        .find(|&&e| g.edge(e).is_loop() && g.sign(e) == Sign::Positive)
    {
        let u = g.edge(e).u;
        return Some(Phi2Step { circuit: Circuit::new(vec![u], vec![e]), new_edges: vec![e] });
    }
    let n = g.vertex_count();
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for e in g.edge_ids() {
        let edge = g.edge(e);
        if !edge.is_loop() {
            adj[edge.u].push(e);
            adj[edge.v].push(e);
        }
    }
    for len in 2..=n {
        let mut best: Option<(Vec<EdgeId>, Vec<EdgeId>, Circuit)> = None;
        for &e in &outside {
            let edge = g.edge(e);
            if edge.is_loop() {
                continue;
            }
            let mut search = CircuitSearch {
                g,
                h,
                adj: &adj,
                first: e,
                target: edge.u,
                len,
                on_path: vec![false; n],
                vertices: vec![edge.u, edge.v],
                edges: vec![e],
                found: Vec::new(),
            };
            search.on_path[edge.u] = true;
            search.on_path[edge.v] = true;
            search.rec(edge.v, 1, g.sign(e) == Sign::Negative);
            for c in search.found {
                let mut new: Vec<EdgeId> = c.edges.iter().copied().filter(|x| !h.contains(x)).collect();
                new.sort_unstable();
                let mut key = c.edges.clone();
                key.sort_unstable();
                let better = match &best {
                    None => true,
                    Some((bn, bk, _)) => (&new, &key) < (bn, bk),
                };
                if better {
                    best = Some((new, key, c));
                }
            }
        }
        if let Some((new_edges, _, circuit)) = best {
            return Some(Phi2Step { circuit, new_edges });
        }
    }
    None
}

struct CircuitSearch<'a> {
    g: &'a SignedGraph,
    h: &'a EdgeSet,
    adj: &'a [Vec<EdgeId>],
    /// smallest new edge of every circuit reported
    first: EdgeId,
    target: VertexId,
    len: usize,
    on_path: Vec<bool>,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    found: Vec<Circuit>,
}

impl CircuitSearch<'_> {
    fn rec(&mut self, x: VertexId, extra_new: usize, odd: bool) {
        let used = self.edges.len();
        for i in 0..self.adj[x].len() {
            let e = self.adj[x][i];
            if e == self.first || self.edges.contains(&e) {
                continue;
            }
            let is_new = !self.h.contains(&e);
            if is_new && (e < self.first || extra_new >= 2) {
                continue;
            }
            let y = self.g.edge(e).other(x);
            let odd2 = odd ^ (self.g.sign(e) == Sign::Negative);
            let count = extra_new + is_new as usize;
            if used + 1 == self.len {
                if y == self.target && !odd2 {
                    let mut edges = self.edges.clone();
                    edges.push(e);
                    self.found.push(Circuit::new(self.vertices.clone(), edges));
                }
                continue;
            }
            if self.on_path[y] {
                continue;
            }
            self.on_path[y] = true;
            self.vertices.push(y);
            self.edges.push(e);
            self.rec(y, count, odd2);
            self.edges.pop();
            self.vertices.pop();
            self.on_path[y] = false;
        }
    }
}

/// Z3-flow nonzero on every edge outside `h`, assuming the closure of `h` is
/// the whole graph. Steps are undone in reverse, each adding a multiple of
/// its circuit's unit circulation that keeps its new edges nonzero.
pub fn z3_flow_phi2(g: &SignedGraph, tau: &Orientation, h: &EdgeSet) -> Result<(ModFlow, Phi2Certificate)> {
    let cert = phi2_closure(g, h);
    if cert.closure.len() != g.edge_count() {
        return Err(FlowError::Precondition(format!(
            "closure covers {} of {} edges",
            cert.closure.len(),
            g.edge_count()
        )));
    }
    let mut values = vec![0i32; g.edge_count()];
    for step in cert.steps.iter().rev() {
        let unit = trail_flow(g, tau, &step.circuit.steps(g), 1);
        let c = [1, 2, 0]
            .into_iter()
            .find(|&c| {
                step.new_edges
                    .iter()
                    .all(|&e| (values[e] + c * unit[e]).rem_euclid(3) != 0)
            })
            .expect("at most two forbidden coefficients");
        for (acc, u) in values.iter_mut().zip(&unit) {
            *acc = (*acc + c * u).rem_euclid(3);
        }
    }
    let flow = ModFlow::new(3, tau.clone(), values)?;
    if !flow.is_flow(g) {
        return Err(FlowError::Postcondition("Z3 boundary nonzero".into()));
    }
    Ok((flow, cert))
}
