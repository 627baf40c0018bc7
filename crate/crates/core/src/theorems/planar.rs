use super::{cubic_flow, finish, CaseTrace, FlowResult};
use crate::analysis::{bridges, is_connected, is_flow_admissible};
use crate::coloring::three_edge_color;
use crate::error::{FlowError, Result};
use crate::graph::{contract, Contraction, EdgeId, EdgeSet, HalfEdge, IntFlow, Orientation, Sign, SignedGraph, VertexId};
use crate::walk::{trail_values, Step};

/// `g` with positive loops stripped and degree-2 vertices suppressed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub graph: SignedGraph,
    /// reduced vertex -> original vertex
    pub vertex_of: Vec<VertexId>,
    /// Original trail behind each reduced edge, leaving from its `u` end.
    pub trails: Vec<Vec<Step>>,
    /// Closed trails with an even number of negative edges that were removed.
    pub stripped: Vec<Vec<Step>>,
}

impl Reduction {
    /// Values on the original graph under `tau` for a flow on the reduced
    /// graph; stripped trails carry ±1.
    pub fn lift(&self, tau: &Orientation, reduced: &IntFlow) -> Vec<i32> {
        let mut values = vec![0; tau.len()];
        let rtau = reduced.orientation();
        for (e, steps) in self.trails.iter().enumerate() {
            let s = steps[0];
            let t = tau.get(HalfEdge { edge: s.edge, end: s.from_end }) * rtau.pair(e)[0] as i32;
            for (x, v) in trail_values(tau, steps, t * reduced.value(e)) {
                values[x] = v;
            }
        }
        for steps in &self.stripped {
            for (x, v) in trail_values(tau, steps, 1) {
                values[x] = v;
            }
        }
        values
    }
}

#[derive(Clone, Debug)]
struct Chain {
    u: VertexId,
    v: VertexId,
    sign: Sign,
    steps: Vec<Step>,
}

impl Chain {
    fn reversed(self) -> Chain {
        Chain {
            u: self.v,
            v: self.u,
            sign: self.sign,
            steps: self.steps.into_iter().rev().map(Step::reversed).collect(),
        }
    }
}

/// Strips positive loops and suppresses degree-2 vertices until neither is left.
pub fn suppress(g: &SignedGraph) -> Reduction {
    let mut chains: Vec<Option<Chain>> = Vec::new();
    let mut stripped = Vec::new();
    for e in g.edge_ids() {
        let edge = g.edge(e);
        let steps = vec![Step { edge: e, from_end: 0 }];
        if edge.is_loop() && edge.sign == Sign::Positive {
            stripped.push(steps);
        } else {
            chains.push(Some(Chain { u: edge.u, v: edge.v, sign: edge.sign, steps }));
        }
    }
    loop {
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
        for (i, c) in chains.iter().enumerate() {
            if let Some(c) = c {
                ends[c.u].push(i);
                ends[c.v].push(i);
            }
        }
        let Some(v) = (0..g.vertex_count()).find(|&v| ends[v].len() == 2 && ends[v][0] != ends[v][1]) else {
            break;
        };
        let mut a = chains[ends[v][0]].take().expect("alive");
        let mut b = chains[ends[v][1]].take().expect("alive");
        if a.v != v {
            a = a.reversed();
        }
        if b.u != v {
            b = b.reversed();
        }
        let mut steps = a.steps;
        steps.extend(b.steps);
        let merged = Chain { u: a.u, v: b.v, sign: a.sign.times(b.sign), steps };
        if merged.u == merged.v && merged.sign == Sign::Positive {
            stripped.push(merged.steps);
        } else {
            chains.push(Some(merged));
        }
    }
    let alive: Vec<Chain> = chains.into_iter().flatten().collect();
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    let mut vertex_of = Vec::new();
    for c in &alive {
        for x in [c.u, c.v] {
            if new_id[x] == usize::MAX {
                new_id[x] = 0;
            }
        }
    }
    for (v, id) in new_id.iter_mut().enumerate() {
        if *id != usize::MAX {
            *id = vertex_of.len();
            vertex_of.push(v);
        }
    }
    let graph = SignedGraph::with_vertices(vertex_of.len(), alive.iter().map(|c| (new_id[c.u], new_id[c.v], c.sign)))
        .expect("vertices exist");
    Reduction { graph, vertex_of, trails: alive.into_iter().map(|c| c.steps).collect(), stripped }
}

/// Gadget replacing one vertex of degree at least four.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub vertex: VertexId,
    /// Circuit vertices in attachment order; empty when the vertex carried only loops.
    pub circuit: Vec<VertexId>,
    /// (positive, negative) edge pair of each unbalanced digon.
    pub digons: Vec<(EdgeId, EdgeId)>,
}

/// Cubic graph from [`blow_up`] and its correspondence with the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUp {
    pub graph: SignedGraph,
    /// input edge -> edge of `graph`; a negative loop maps to the negative
    /// edge of its digon
    pub edge_of: Vec<EdgeId>,
    /// Positive gadget edges; contracting them gives back the input.
    pub contract_set: EdgeSet,
    pub gadgets: Vec<Gadget>,
}

impl BlowUp {
    pub fn contract_back(&self) -> Contraction {
        contract(&self.graph, &self.contract_set)
    }
}

/// Replaces every vertex of degree `d ≥ 4` with `t` negative loops by a
/// positive circuit of length `d - 2t` whose closing edge is subdivided into
/// a chain through `t` unbalanced digons. Incident edges attach in edge-id order.
pub fn blow_up(g: &SignedGraph) -> Result<BlowUp> {
    let n = g.vertex_count();
    if let Some(e) = g.edge_ids().find(|&e| g.edge(e).is_loop() && g.sign(e) == Sign::Positive) {
        return Err(FlowError::Precondition(format!("positive loop {e}")));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) < 3) {
        return Err(FlowError::Precondition(format!("vertex {v} has degree {}", g.degree(v))));
    }
    let mut out = SignedGraph::new(n);
    let blown: Vec<bool> = g.vertices().map(|v| g.degree(v) >= 4).collect();
    let mut loops: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    let mut slots: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for v in g.vertices().filter(|&v| blown[v]) {
        loops[v] = g.edge_ids().filter(|&e| g.edge(e).is_loop() && g.edge(e).u == v).collect();
        let r = g.degree(v) - 2 * loops[v].len();
        if r > 0 {
            slots[v].push(v);
            for _ in 1..r {
                slots[v].push(out.add_vertex());
            }
        }
    }
    let circuits = slots.clone();
    let mut next = vec![0usize; n];
    let mut attach = |v: VertexId| {
        if blown[v] {
            next[v] += 1;
            slots[v][next[v] - 1]
        } else {
            v
        }
    };
    let mut edge_of = vec![usize::MAX; g.edge_count()];
    for e in g.edge_ids() {
        let edge = *g.edge(e);
        if edge.is_loop() && blown[edge.u] {
            continue;
        }
        let (a, b) = if edge.is_loop() { (edge.u, edge.u) } else { (attach(edge.u), attach(edge.v)) };
        edge_of[e] = out.add_edge(a, b, edge.sign)?;
    }
    let mut contract_set = EdgeSet::new();
    let mut gadgets = Vec::new();
    let mut positive = |out: &mut SignedGraph, a: VertexId, b: VertexId| -> Result<EdgeId> {
        let e = out.add_edge(a, b, Sign::Positive)?;
        contract_set.insert(e);
        Ok(e)
    };
    for v in g.vertices().filter(|&v| blown[v]) {
        let c = &circuits[v];
        let mut digons = Vec::new();
        // chain joints (a, b) of each digon, in loop order
        let mut joints = Vec::new();
        if c.is_empty() {
            // only loops: a closed necklace of digons
            for j in 0..loops[v].len() {
                joints.push((if j == 0 { v } else { out.add_vertex() }, out.add_vertex()));
            }
            for j in 0..joints.len() {
                positive(&mut out, joints[j].1, joints[(j + 1) % joints.len()].0)?;
            }
        } else {
            for w in c.windows(2) {
                positive(&mut out, w[0], w[1])?;
            }
            let mut prev = c[c.len() - 1];
            for _ in &loops[v] {
                let a = out.add_vertex();
                let b = out.add_vertex();
                positive(&mut out, prev, a)?;
                joints.push((a, b));
                prev = b;
            }
            positive(&mut out, prev, c[0])?;
        }
        for (&l, &(a, b)) in loops[v].iter().zip(&joints) {
            let p = positive(&mut out, a, b)?;
            let q = out.add_edge(a, b, Sign::Negative)?;
            edge_of[l] = q;
            digons.push((p, q));
        }
        gadgets.push(Gadget { vertex: v, circuit: c.clone(), digons });
    }
    Ok(BlowUp { graph: out, edge_of, contract_set, gadgets })
}

/// Nowhere-zero 10-flow of a connected, bridgeless, flow-admissible signed
/// graph whose blow-up is 3-edge-colorable (always so for planar inputs).
pub fn planar_flow(g: &SignedGraph) -> Result<FlowResult> {
    if !is_connected(g) {
        return Err(FlowError::Disconnected);
    }
    if let Some(&b) = bridges(g).first() {
        return Err(FlowError::HasBridge(b));
    }
    let adm = is_flow_admissible(g);
    if !adm.admissible {
        return Err(FlowError::NotAdmissible(adm.reason.to_string()));
    }
    let tau = Orientation::default_for(g);
    let red = suppress(g);
    let mut trace = CaseTrace::default();
    trace.push("reduce");
    if red.graph.edge_count() == 0 {
        let empty = IntFlow::zero(Orientation::from_pairs(Vec::new()));
        return finish(g, &tau, red.lift(&tau, &empty), 2, trace, false);
    }
    let bu = blow_up(&red.graph)?;
    trace.push("blow-up");
    let coloring = three_edge_color(&bu.graph)?;
    let res = cubic_flow(&bu.graph, Some(coloring))?;
    trace.0.extend(res.trace.0.iter().cloned());
    trace.push("contract");
    let pairs = bu.edge_of.iter().map(|&x| res.flow.orientation().pair(x)).collect();
    let values = bu.edge_of.iter().map(|&x| res.flow.value(x)).collect();
    let reduced = IntFlow::with_bound(Orientation::from_pairs(pairs), values, res.k);
    finish(g, &tau, red.lift(&tau, &reduced), res.k, trace, res.exceptional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_flow, Sign::*};

    #[test]
    fn degree_seven_with_two_loops() {
        // vertex 0 with two negative loops and three neighbours forming a triangle
        let g = SignedGraph::from_edges([
            (0, 0, Negative),
            (0, 0, Negative),
            (0, 1, Positive),
            (0, 2, Positive),
            (0, 3, Negative),
            (1, 2, Positive),
            (2, 3, Positive),
            (3, 1, Positive),
        ]);
        let bu = blow_up(&g).unwrap();
        assert!(bu.graph.is_cubic());
        assert_eq!(bu.gadgets.len(), 1);
        assert_eq!(bu.gadgets[0].circuit.len(), 3);
        assert_eq!(bu.gadgets[0].digons.len(), 2);
        let c = bu.contract_back();
        assert_eq!(c.graph.vertex_count(), g.vertex_count());
        let inv = c.inverse_edge_map(bu.graph.edge_count());
        for e in g.edge_ids() {
            let x = c.graph.edge(inv[bu.edge_of[e]].unwrap());
            let o = g.edge(e);
            assert_eq!(x.sign, o.sign);
            assert_eq!((x.u.min(x.v), x.u.max(x.v)), (o.u.min(o.v), o.u.max(o.v)));
        }
    }

    #[test]
    fn cubic_input_is_unchanged() {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = SignedGraph::from_edges(pairs.iter().map(|&(u, v)| (u, v, Negative)));
        let bu = blow_up(&g).unwrap();
        assert_eq!(bu.graph, g);
        assert!(bu.contract_set.is_empty());
    }

    #[test]
    fn suppression_lifts_back() {
        // subdivided K4 plus a positive loop
        let g = SignedGraph::from_edges([
            (0, 4, Negative),
            (4, 1, Positive),
            (0, 2, Positive),
            (0, 3, Positive),
            (1, 2, Positive),
            (1, 3, Positive),
            (2, 3, Negative),
            (3, 3, Positive),
        ]);
        let red = suppress(&g);
        assert_eq!(red.graph.vertex_count(), 4);
        assert_eq!(red.graph.edge_count(), 6);
        let res = planar_flow(&g).unwrap();
        assert!(res.k <= 10);
        assert!(verify_flow(&g, &res.flow, true).is_valid());
    }

    #[test]
    fn wheel_and_bridge() {
        let mut e = vec![];
        for i in 1..=4 {
            e.push((i, i % 4 + 1, Positive));
            e.push((0, i, if i % 2 == 0 { Negative } else { Positive }));
        }
        let w = SignedGraph::from_edges(e);
        let res = planar_flow(&w).unwrap();
        assert!(verify_flow(&w, &res.flow, true).is_valid() && res.k <= 10);
        let b = SignedGraph::from_edges([(0, 0, Negative), (1, 1, Negative), (0, 1, Positive)]);
        assert_eq!(planar_flow(&b).unwrap_err(), FlowError::HasBridge(2));
    }
}
