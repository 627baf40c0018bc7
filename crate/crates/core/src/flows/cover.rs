//! 4-flows covering an unbalanced circuit whose complement is balanced.

use std::collections::BTreeSet;

use super::checked;
use crate::analysis::{balance, edge_components, is_flow_admissible, shortest_path, BalanceWitness};
use crate::error::{FlowError, Result};
use crate::graph::{switch, EdgeId, EdgeSet, IntFlow, Orientation, Sign, SignedGraph, VertexId};
use crate::search::{SearchOutcome, ValueSearch};
use crate::walk::{trail_flow, Circuit, Path, Step};

/// Component of `g - E(C)` that touches `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverComponent {
    pub vertices: BTreeSet<VertexId>,
    pub edges: EdgeSet,
    /// Positions on `C` (indices into `C.vertices`) lying in the component, ascending.
    pub attachments: Vec<usize>,
    /// Negative segments as (start position, length).
    pub negative_segments: Vec<(usize, usize)>,
}

/// Arc of `C` starting at position `start` and running `len` edges forward.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cosegment {
    pub component: usize,
    pub start: usize,
    pub len: usize,
}

impl Cosegment {
    pub fn positions(&self, circuit_len: usize) -> Vec<usize> {
        (0..self.len).map(|i| (self.start + i) % circuit_len).collect()
    }

    pub fn end(&self, circuit_len: usize) -> usize {
        (self.start + self.len) % circuit_len
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosegmentCover {
    pub circuit: Circuit,
    pub components: Vec<CoverComponent>,
    /// Minimal cover in cyclic order of start positions.
    pub cover: Vec<Cosegment>,
    /// `paths[i]` joins the end of `cover[i]` back to its start inside its component.
    pub paths: Vec<Path>,
}

impl CosegmentCover {
    /// Number of chosen cosegments containing each edge of `C`, by position.
    pub fn multiplicity(&self) -> Vec<usize> {
        let l = self.circuit.len();
        let mut count = vec![0; l];
        for s in &self.cover {
            for p in s.positions(l) {
                count[p] += 1;
            }
        }
        count
    }

    /// Covers `C`, each edge at most twice, no cosegment redundant, and
    /// consecutive cosegments overlap while the others are disjoint.
    pub fn validate(&self) -> Result<()> {
        let l = self.circuit.len();
        let count = self.multiplicity();
        let fail = |m: String| Err(FlowError::Postcondition(m));
        if let Some(p) = count.iter().position(|&c| c == 0 || c > 2) {
            return fail(format!("edge at position {p} lies in {} cosegments", count[p]));
        }
        for s in &self.cover {
            if s.positions(l).iter().all(|&p| count[p] >= 2) {
                return fail(format!("cosegment of component {} is redundant", s.component));
            }
        }
        let t = self.cover.len();
        for i in 0..t {
            for j in i + 1..t {
                let a: BTreeSet<usize> = self.cover[i].positions(l).into_iter().collect();
                let shared = self.cover[j].positions(l).into_iter().filter(|p| a.contains(p)).count();
                let consecutive = j == i + 1 || (i == 0 && j == t - 1);
                if consecutive && shared == 0 {
                    return fail(format!("cosegments {i} and {j} do not overlap"));
                }
                if !consecutive && shared > 0 {
                    return fail(format!("cosegments {i} and {j} overlap"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverBranch {
    /// A path through the third attachment; `2 f1 + f2`.
    PathThrough { attachments: [VertexId; 3], path: Path },
    /// Two paths meeting at `center`.
    Tripod { attachments: [VertexId; 3], center: VertexId, legs: EdgeSet },
    Cosegments(CosegmentCover),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFlow {
    pub flow: IntFlow,
    pub branch: CoverBranch,
}

/// Working data in a frame where every edge off `C` is positive.
struct Frame {
    g: SignedGraph,
    tau: Orientation,
    c: Circuit,
    components: Vec<CoverComponent>,
}

impl Frame {
    fn new(g: &SignedGraph, tau: &Orientation, c: &Circuit) -> Result<Frame> {
        c.validate(g)?;
        if c.is_balanced(g) {
            return Err(FlowError::Precondition("circuit is balanced".into()));
        }
        let cedges = c.edge_set();
        let rest: EdgeSet = g.edge_ids().filter(|e| !cedges.contains(e)).collect();
        let BalanceWitness::Balanced { switching } = balance(g, &rest) else {
            return Err(FlowError::Precondition("graph minus the circuit is unbalanced".into()));
        };
        let s = switch(g, tau, None, &switching);
        let l = c.len();
        let mut pos = vec![None; g.vertex_count()];
        for (i, &v) in c.vertices.iter().enumerate() {
            pos[v] = Some(i);
        }
        let mut comps: Vec<(BTreeSet<VertexId>, EdgeSet)> = edge_components(g, &rest)
            .into_iter()
            .filter(|(vs, _)| vs.iter().any(|&v| pos[v].is_some()))
            .collect();
        for &v in &c.vertices {
            if !comps.iter().any(|(vs, _)| vs.contains(&v)) {
                comps.push((BTreeSet::from([v]), EdgeSet::new()));
            }
        }
        comps.sort_by_key(|(vs, _)| *vs.iter().next().expect("nonempty"));
        let neg_at: Vec<bool> = c.edges.iter().map(|&e| s.graph.sign(e) == Sign::Negative).collect();
        let components = comps
            .into_iter()
            .map(|(vertices, edges)| {
                let mut attachments: Vec<usize> = vertices.iter().filter_map(|&v| pos[v]).collect();
                attachments.sort_unstable();
                let r = attachments.len();
                let mut negative_segments = Vec::new();
                for j in 0..r {
                    let start = attachments[j];
                    let len = if r == 1 { l } else { (attachments[(j + 1) % r] + l - start) % l };
                    let negs = (0..len).filter(|i| neg_at[(start + i) % l]).count();
                    if negs % 2 == 1 {
                        negative_segments.push((start, len));
                    }
                }
                CoverComponent { vertices, edges, attachments, negative_segments }
            })
            .collect();
        Ok(Frame { g: s.graph, tau: s.orientation, c: c.clone(), components })
    }

    fn arc_steps(&self, start: usize, len: usize) -> Vec<Step> {
        let l = self.c.len();
        (0..len)
            .map(|i| {
                let p = (start + i) % l;
                Step::leaving(&self.g, self.c.edges[p], self.c.vertices[p])
            })
            .collect()
    }

    fn pos(&self, v: VertexId) -> usize {
        self.c.vertices.iter().position(|&w| w == v).expect("vertex on circuit")
    }

    fn arc_len(&self, from: VertexId, to: VertexId) -> usize {
        let l = self.c.len();
        (self.pos(to) + l - self.pos(from)) % l
    }
}

/// Minimal cover of `C` by cosegments, assuming every component of
/// `g - E(C)` determines exactly one negative segment.
pub fn minimal_cosegment_cover(g: &SignedGraph, tau: &Orientation, c: &Circuit) -> Result<CosegmentCover> {
    let frame = Frame::new(g, tau, c)?;
    cover_in_frame(&frame)
}

fn cover_in_frame(frame: &Frame) -> Result<CosegmentCover> {
    let l = frame.c.len();
    let mut all = Vec::new();
    for (i, m) in frame.components.iter().enumerate() {
        if m.negative_segments.len() != 1 {
            return Err(FlowError::Precondition(format!(
                "component {i} determines {} negative segments",
                m.negative_segments.len()
            )));
        }
        let (start, len) = m.negative_segments[0];
        if len < l {
            all.push(Cosegment { component: i, start: (start + len) % l, len: l - len });
        }
    }
    let covers = |set: &[Cosegment]| {
        let mut hit = vec![false; l];
        for s in set {
            for p in s.positions(l) {
                hit[p] = true;
            }
        }
        hit.iter().all(|&h| h)
    };
    if !covers(&all) {
        return Err(FlowError::Precondition(
            "cosegments do not cover the circuit; the graph is not flow-admissible".into(),
        ));
    }
    // drop redundant cosegments, shortest first
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by_key(|&i| (all[i].len, all[i].component));
    let mut keep = vec![true; all.len()];
    for i in order {
        keep[i] = false;
        let rest: Vec<Cosegment> = (0..all.len()).filter(|&j| keep[j]).map(|j| all[j]).collect();
        if !covers(&rest) {
            keep[i] = true;
        }
    }
    let mut cover: Vec<Cosegment> = (0..all.len()).filter(|&j| keep[j]).map(|j| all[j]).collect();
    cover.sort_by_key(|s| (s.start, s.component));
    let mut paths = Vec::new();
    let cvertices = frame.c.vertex_set();
    for s in &cover {
        let m = &frame.components[s.component];
        let x = frame.c.vertices[s.start];
        let y = frame.c.vertices[s.end(l)];
        let blocked: BTreeSet<VertexId> = cvertices.iter().copied().filter(|&v| v != x && v != y).collect();
        let p = shortest_path(&frame.g, &m.edges, &BTreeSet::from([y]), &BTreeSet::from([x]), &blocked)
            .or_else(|| {
                shortest_path(&frame.g, &m.edges, &BTreeSet::from([y]), &BTreeSet::from([x]), &BTreeSet::new())
            })
            .ok_or_else(|| FlowError::Postcondition("component has no connecting path".into()))?;
        paths.push(p);
    }
    let result = CosegmentCover {
        circuit: frame.c.clone(),
        components: frame.components.clone(),
        cover,
        paths,
    };
    result.validate()?;
    Ok(result)
}

/// 4-flow whose support contains `E(C)`, where outside `C` its support has
/// maximum degree 3 with at most one vertex of degree 3.
pub fn cover_circuit_4flow(g: &SignedGraph, tau: &Orientation, c: &Circuit) -> Result<CoverFlow> {
    let adm = is_flow_admissible(g);
    if !adm.admissible {
        return Err(FlowError::NotAdmissible(adm.reason.to_string()));
    }
    let frame = Frame::new(g, tau, c)?;
    let m = g.edge_count();
    let (values, branch) = match frame.components.iter().position(|x| x.negative_segments.len() >= 3) {
        Some(i) => branch_a(&frame, i)?,
        None => {
            let cover = cover_in_frame(&frame)?;
            let t = cover.cover.len();
            let l = frame.c.len();
            let mut flows: Vec<Vec<i32>> = Vec::with_capacity(t);
            for (s, p) in cover.cover.iter().zip(&cover.paths) {
                let mut steps = frame.arc_steps(s.start, s.len);
                steps.extend(p.steps(&frame.g));
                flows.push(trail_flow(&frame.g, &frame.tau, &steps, 1));
            }
            // make each flow agree with its predecessor on their shared arc
            for i in 1..t {
                let shared = cover.cover[i]
                    .positions(l)
                    .into_iter()
                    .map(|p| frame.c.edges[p])
                    .find(|&e| flows[i - 1][e] != 0);
                if let Some(e) = shared {
                    if flows[i][e] != flows[i - 1][e] {
                        flows[i].iter_mut().for_each(|v| *v = -*v);
                    }
                }
            }
            let mut values = vec![0i32; m];
            for (i, f) in flows.iter().enumerate() {
                let w = if i + 1 == t { 2 } else { 1 };
                for e in 0..m {
                    values[e] += w * f[e];
                }
            }
            (values, CoverBranch::Cosegments(cover))
        }
    };
    let flow = checked(g, IntFlow::with_bound(tau.clone(), values, 4), "circuit cover")?;
    check_cover_conditions(g, c, &flow)?;
    Ok(CoverFlow { flow, branch })
}

fn check_cover_conditions(g: &SignedGraph, c: &Circuit, f: &IntFlow) -> Result<()> {
    if let Some(&e) = c.edges.iter().find(|&&e| f.value(e) == 0) {
        return Err(FlowError::Postcondition(format!("circuit edge {e} has value 0")));
    }
    let deg = g.degrees_in(&f.support());
    let on = c.vertex_set();
    let outside: Vec<usize> = g.vertices().filter(|v| !on.contains(v)).map(|v| deg[v]).collect();
    if outside.iter().any(|&d| d > 3) || outside.iter().filter(|&&d| d == 3).count() > 1 {
        return Err(FlowError::Postcondition("support degree condition fails off the circuit".into()));
    }
    Ok(())
}

fn branch_a(frame: &Frame, i: usize) -> Result<(Vec<i32>, CoverBranch)> {
    let comp = &frame.components[i];
    let negs = &comp.negative_segments;
    let r = negs.len();
    let m = frame.g.edge_count();
    let at = |p: usize| frame.c.vertices[p];
    for j in 0..r {
        let base = [at(negs[j].0), at(negs[(j + 1) % r].0), at(negs[(j + 2) % r].0)];
        for rot in 0..3 {
            let u = [base[rot], base[(rot + 1) % 3], base[(rot + 2) % 3]];
            if let Some(path) = path_through(&frame.g, &comp.edges, u[0], u[1], u[2]) {
                let k3 = path.vertices.iter().position(|&v| v == u[2]).expect("on path");
                let to_u3 = Path { vertices: path.vertices[..=k3].to_vec(), edges: path.edges[..k3].to_vec() };
                let from_u3 = Path { vertices: path.vertices[k3..].to_vec(), edges: path.edges[k3..].to_vec() };
                // C1: arc u1 -> u3, back along the path; C2: arc u3 -> u2, back along the path
                let mut s1 = frame.arc_steps(frame.pos(u[0]), frame.arc_len(u[0], u[2]));
                s1.extend(to_u3.reversed().steps(&frame.g));
                let mut s2 = frame.arc_steps(frame.pos(u[2]), frame.arc_len(u[2], u[1]));
                s2.extend(from_u3.reversed().steps(&frame.g));
                let f1 = trail_flow(&frame.g, &frame.tau, &s1, 1);
                let f2 = trail_flow(&frame.g, &frame.tau, &s2, 1);
                let values = (0..m).map(|e| 2 * f1[e] + f2[e]).collect();
                return Ok((values, CoverBranch::PathThrough { attachments: u, path }));
            }
        }
    }
    tripod(frame, i)
}

/// Simple path from `a` to `b` through `c` using `edges`.
fn path_through(g: &SignedGraph, edges: &EdgeSet, a: VertexId, b: VertexId, c: VertexId) -> Option<Path> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for &e in edges {
        if !g.edge(e).is_loop() {
            adj[g.edge(e).u].push(e);
            adj[g.edge(e).v].push(e);
        }
    }
    struct St<'a> {
        g: &'a SignedGraph,
        adj: Vec<Vec<EdgeId>>,
        on: Vec<bool>,
        vs: Vec<VertexId>,
        es: Vec<EdgeId>,
        budget: u64,
    }
    fn rec(s: &mut St, x: VertexId, b: VertexId, c: VertexId) -> bool {
        if s.budget == 0 {
            return false;
        }
        s.budget -= 1;
        if x == b {
            return s.on[c];
        }
        for i in 0..s.adj[x].len() {
            let e = s.adj[x][i];
            let y = s.g.edge(e).other(x);
            if s.on[y] {
                continue;
            }
            s.on[y] = true;
            s.vs.push(y);
            s.es.push(e);
            if rec(s, y, b, c) {
                return true;
            }
            s.vs.pop();
            s.es.pop();
            s.on[y] = false;
        }
        false
    }
    let mut s = St { g, adj, on: vec![false; n], vs: vec![a], es: vec![], budget: 2_000_000 };
    s.on[a] = true;
    if rec(&mut s, a, b, c) {
        Some(Path { vertices: s.vs, edges: s.es })
    } else {
        None
    }
}

fn tripod(frame: &Frame, i: usize) -> Result<(Vec<i32>, CoverBranch)> {
    let comp = &frame.components[i];
    let negs = &comp.negative_segments;
    let u = [negs[0].0, negs[1].0, negs[2].0].map(|p| frame.c.vertices[p]);
    let g = &frame.g;
    let p1 = shortest_path(g, &comp.edges, &BTreeSet::from([u[0]]), &BTreeSet::from([u[1]]), &BTreeSet::from([u[2]]))
        .ok_or_else(|| FlowError::Postcondition("no path between attachments".into()))?;
    let on_p1: BTreeSet<VertexId> = p1.vertices.iter().copied().collect();
    let p2 = shortest_path(g, &comp.edges, &BTreeSet::from([u[2]]), &on_p1, &BTreeSet::new())
        .ok_or_else(|| FlowError::Postcondition("no path to the first leg".into()))?;
    let center = p2.end();
    let k = p1.vertices.iter().position(|&v| v == center).expect("on p1");
    // preferred magnitude per edge: legs 3, 2, 1 and arcs 1, 3, 2
    let mut prefer = vec![0i32; g.edge_count()];
    for (idx, &e) in p1.edges.iter().enumerate() {
        prefer[e] = if idx < k { 3 } else { 2 };
    }
    for &e in &p2.edges {
        prefer[e] = 1;
    }
    for (from, to, w) in [(u[0], u[1], 1), (u[1], u[2], 3), (u[2], u[0], 2)] {
        for s in frame.arc_steps(frame.pos(from), frame.arc_len(from, to)) {
            prefer[s.edge] = w;
        }
    }
    let candidates = prefer
        .iter()
        .map(|&p| {
            if p == 0 {
                vec![0]
            } else {
                let mut c = vec![p, -p];
                c.extend([1, 2, 3].into_iter().filter(|&x| x != p).flat_map(|x| [x, -x]));
                c
            }
        })
        .collect();
    let values = match ValueSearch::new(g, &frame.tau, candidates).with_budget(5_000_000).solve() {
        SearchOutcome::Found(v) => v,
        other => return Err(FlowError::SearchExhausted(format!("tripod: {other:?}"))),
    };
    let legs: EdgeSet = p1.edges.iter().chain(&p2.edges).copied().collect();
    Ok((values, CoverBranch::Tripod { attachments: u, center, legs }))
}
