//! Signed multigraphs, half-edge orientations and integer/modular flows.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{FlowError, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type EdgeSet = BTreeSet<EdgeId>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub sign: Sign,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Vertex carrying half edge `end` (0 is at `u`, 1 is at `v`).
    pub fn endpoint(&self, end: u8) -> VertexId {
        if end == 0 {
            self.u
        } else {
            self.v
        }
    }

    pub fn other(&self, w: VertexId) -> VertexId {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

/// One of the two half edges of an edge. A loop owns both halves at the same vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub end: u8,
}

impl HalfEdge {
    pub fn opposite(self) -> HalfEdge {
        HalfEdge {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

/// Finite multigraph with loops and a sign on every edge. Edge ids are
/// positions in the edge list and never change.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl SignedGraph {
    pub fn new(n: usize) -> Self {
        SignedGraph {
            n,
            edges: Vec::new(),
        }
    }

    /// Builds a graph from `(u, v, sign)` triples; the vertex set is `0..=max id`.
    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId, Sign)>,
    {
        let mut g = SignedGraph::new(0);
        for (u, v, s) in edges {
            g.n = g.n.max(u + 1).max(v + 1);
            g.edges.push(Edge { u, v, sign: s });
        }
        g
    }

    /// Like [`SignedGraph::from_edges`] but with an explicit vertex count.
    pub fn with_vertices<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Sign)>,
    {
        let mut g = SignedGraph::new(n);
        for (u, v, s) in edges {
            g.add_edge(u, v, s)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, sign: Sign) -> Result<EdgeId> {
        for w in [u, v] {
            if w >= self.n {
                return Err(FlowError::UnknownVertex(w));
            }
        }
        self.edges.push(Edge { u, v, sign });
        Ok(self.edges.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> std::ops::Range<EdgeId> {
        0..self.edges.len()
    }

    pub fn all_edges(&self) -> EdgeSet {
        self.edge_ids().collect()
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.edges[e].sign
    }

    pub fn set_sign(&mut self, e: EdgeId, sign: Sign) {
        self.edges[e].sign = sign;
    }

    pub fn negative_edges(&self) -> EdgeSet {
        self.edge_ids().filter(|&e| self.sign(e).is_negative()).collect()
    }

    pub fn negative_count<'a, I: IntoIterator<Item = &'a EdgeId>>(&self, edges: I) -> usize {
        edges
            .into_iter()
            .filter(|&&e| self.sign(e).is_negative())
            .count()
    }

    pub fn vertex_of(&self, h: HalfEdge) -> VertexId {
        self.edges[h.edge].endpoint(h.end)
    }

    /// Half edges incident with each vertex; a loop appears twice at its vertex.
    pub fn incidence(&self) -> Vec<Vec<HalfEdge>> {
        let mut inc = vec![Vec::new(); self.n];
        for (e, edge) in self.edges.iter().enumerate() {
            inc[edge.u].push(HalfEdge { edge: e, end: 0 });
            inc[edge.v].push(HalfEdge { edge: e, end: 1 });
        }
        inc
    }

    pub fn half_edges_at(&self, v: VertexId) -> Vec<HalfEdge> {
        let mut hs = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.u == v {
                hs.push(HalfEdge { edge: e, end: 0 });
            }
            if edge.v == v {
                hs.push(HalfEdge { edge: e, end: 1 });
            }
        }
        hs
    }

    /// Degree counting loops twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    pub fn degrees_in(&self, edges: &EdgeSet) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &e in edges {
            d[self.edges[e].u] += 1;
            d[self.edges[e].v] += 1;
        }
        d
    }

    pub fn is_cubic(&self) -> bool {
        self.vertices().all(|v| self.degree(v) == 3)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Copy of the graph on the same vertex set keeping only `keep`, in id order.
    /// Returns the new graph and the new-to-old edge map.
    pub fn edge_subgraph(&self, keep: &EdgeSet) -> (SignedGraph, Vec<EdgeId>) {
        let map: Vec<EdgeId> = keep.iter().copied().collect();
        let g = SignedGraph {
            n: self.n,
            edges: map.iter().map(|&e| self.edges[e]).collect(),
        };
        (g, map)
    }
}

/// Orientation: a value in {+1, -1} per half edge with
/// `tau(h_u) * tau(h_v) = -sign(e)` for every edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    tau: Vec<[i8; 2]>,
}

impl Orientation {
    /// Positive edges point away from their smaller endpoint; both halves of a
    /// negative edge carry +1.
    pub fn default_for(g: &SignedGraph) -> Orientation {
        let tau = g
            .edges()
            .iter()
            .map(|e| match e.sign {
                Sign::Negative => [1, 1],
                Sign::Positive if e.u <= e.v => [1, -1],
                Sign::Positive => [-1, 1],
            })
            .collect();
        Orientation { tau }
    }

    pub fn from_pairs(tau: Vec<[i8; 2]>) -> Orientation {
        Orientation { tau }
    }

    pub fn get(&self, h: HalfEdge) -> i32 {
        self.tau[h.edge][h.end as usize] as i32
    }

    pub fn pair(&self, e: EdgeId) -> [i8; 2] {
        self.tau[e]
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn push(&mut self, pair: [i8; 2]) {
        self.tau.push(pair);
    }

    /// Net coefficient of edge `e` in the boundary at `v` (two halves for a loop).
    pub fn coefficient(&self, g: &SignedGraph, e: EdgeId, v: VertexId) -> i32 {
        let edge = g.edge(e);
        let mut c = 0;
        if edge.u == v {
            c += self.tau[e][0] as i32;
        }
        if edge.v == v {
            c += self.tau[e][1] as i32;
        }
        c
    }

    /// Edges whose half-edge values violate the orientation rule.
    pub fn inconsistent_edges(&self, g: &SignedGraph) -> Vec<EdgeId> {
        if self.tau.len() != g.edge_count() {
            return g.edge_ids().collect();
        }
        g.edge_ids()
            .filter(|&e| {
                let [a, b] = self.tau[e];
                (a as i32) * (b as i32) != -g.sign(e).value() || a.abs() != 1 || b.abs() != 1
            })
            .collect()
    }

    pub fn is_valid_for(&self, g: &SignedGraph) -> bool {
        self.inconsistent_edges(g).is_empty()
    }

    /// Restriction to a subgraph given by a new-to-old edge map.
    pub fn restrict(&self, map: &[EdgeId]) -> Orientation {
        Orientation {
            tau: map.iter().map(|&e| self.tau[e]).collect(),
        }
    }
}

/// Boundary of `(tau, values)` at `v`.
pub fn boundary(g: &SignedGraph, tau: &Orientation, values: &[i32], v: VertexId) -> Result<i64> {
    if v >= g.vertex_count() {
        return Err(FlowError::UnknownVertex(v));
    }
    Ok(g
        .edge_ids()
        .map(|e| tau.coefficient(g, e, v) as i64 * values[e] as i64)
        .sum())
}

/// Boundaries at every vertex.
pub fn boundaries(g: &SignedGraph, tau: &Orientation, values: &[i32]) -> Vec<i64> {
    let mut b = vec![0i64; g.vertex_count()];
    for (e, edge) in g.edges().iter().enumerate() {
        let [t0, t1] = tau.pair(e);
        b[edge.u] += t0 as i64 * values[e] as i64;
        b[edge.v] += t1 as i64 * values[e] as i64;
    }
    b
}

/// Integer flow candidate: edge values under a reference orientation with a
/// declared bound `k`, meaning `|f(e)| <= k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntFlow {
    orientation: Orientation,
    values: Vec<i32>,
    k: i32,
}

impl IntFlow {
    /// Bound set to `max |value| + 1` (at least 2).
    pub fn new(orientation: Orientation, values: Vec<i32>) -> IntFlow {
        let k = values.iter().map(|v| v.abs()).max().unwrap_or(0).max(1) + 1;
        IntFlow {
            orientation,
            values,
            k,
        }
    }

    pub fn with_bound(orientation: Orientation, values: Vec<i32>, k: i32) -> IntFlow {
        IntFlow {
            orientation,
            values,
            k,
        }
    }

    pub fn zero(orientation: Orientation) -> IntFlow {
        let m = orientation.len();
        IntFlow::new(orientation, vec![0; m])
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<i32> {
        self.values
    }

    pub fn value(&self, e: EdgeId) -> i32 {
        self.values[e]
    }

    pub fn bound(&self) -> i32 {
        self.k
    }

    pub fn set_bound(&mut self, k: i32) {
        self.k = k;
    }

    pub fn max_abs(&self) -> i32 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn support(&self) -> EdgeSet {
        (0..self.values.len())
            .filter(|&e| self.values[e] != 0)
            .collect()
    }

    /// `E_{f=±i}`.
    pub fn magnitude_class(&self, i: i32) -> EdgeSet {
        (0..self.values.len())
            .filter(|&e| self.values[e].abs() == i)
            .collect()
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.values.iter().all(|&v| v != 0)
    }

    pub fn negated(&self) -> IntFlow {
        IntFlow {
            orientation: self.orientation.clone(),
            values: self.values.iter().map(|v| -v).collect(),
            k: self.k,
        }
    }
}

/// Modular flow candidate with residues in `0..modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFlow {
    modulus: i32,
    orientation: Orientation,
    values: Vec<i32>,
}

impl ModFlow {
    pub fn new(modulus: i32, orientation: Orientation, values: Vec<i32>) -> Result<ModFlow> {
        if modulus < 2 {
            return Err(FlowError::Precondition(format!(
                "modulus {modulus} is below 2"
            )));
        }
        let values = values.into_iter().map(|v| v.rem_euclid(modulus)).collect();
        Ok(ModFlow {
            modulus,
            orientation,
            values,
        })
    }

    pub fn modulus(&self) -> i32 {
        self.modulus
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn value(&self, e: EdgeId) -> i32 {
        self.values[e]
    }

    pub fn support(&self) -> EdgeSet {
        (0..self.values.len())
            .filter(|&e| self.values[e] != 0)
            .collect()
    }

    /// True when every boundary vanishes modulo the modulus.
    pub fn is_flow(&self, g: &SignedGraph) -> bool {
        boundaries(g, &self.orientation, &self.values)
            .iter()
            .all(|b| b.rem_euclid(self.modulus as i64) == 0)
    }
}

/// Outcome of [`verify_flow`]; an empty report means the flow is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlowReport {
    pub orientation_errors: Vec<EdgeId>,
    pub boundary_violations: Vec<(VertexId, i64)>,
    pub bound_violations: Vec<EdgeId>,
    pub zero_edges: Vec<EdgeId>,
    pub size_mismatch: bool,
}

impl FlowReport {
    pub fn is_valid(&self) -> bool {
        self.orientation_errors.is_empty()
            && self.boundary_violations.is_empty()
            && self.bound_violations.is_empty()
            && self.zero_edges.is_empty()
            && !self.size_mismatch
    }
}

impl fmt::Display for FlowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let mut parts = Vec::new();
        if self.size_mismatch {
            parts.push("value count does not match edge count".to_string());
        }
        if !self.orientation_errors.is_empty() {
            parts.push(format!("orientation inconsistent on edges {:?}", self.orientation_errors));
        }
        if !self.boundary_violations.is_empty() {
            parts.push(format!("nonzero boundary at {:?}", self.boundary_violations));
        }
        if !self.bound_violations.is_empty() {
            parts.push(format!("values out of range on edges {:?}", self.bound_violations));
        }
        if !self.zero_edges.is_empty() {
            parts.push(format!("zero on edges {:?}", self.zero_edges));
        }
        f.write_str(&parts.join("; "))
    }
}

pub fn verify_flow(g: &SignedGraph, flow: &IntFlow, require_nowhere_zero: bool) -> FlowReport {
    let mut report = FlowReport::default();
    if flow.values.len() != g.edge_count() || flow.orientation.len() != g.edge_count() {
        report.size_mismatch = true;
        return report;
    }
    report.orientation_errors = flow.orientation.inconsistent_edges(g);
    report.boundary_violations = boundaries(g, &flow.orientation, &flow.values)
        .into_iter()
        .enumerate()
        .filter(|&(_, b)| b != 0)
        .collect();
    report.bound_violations = g
        .edge_ids()
        .filter(|&e| flow.values[e].abs() > flow.k - 1)
        .collect();
    if require_nowhere_zero {
        report.zero_edges = g.edge_ids().filter(|&e| flow.values[e] == 0).collect();
    }
    report
}

/// Result of switching at a vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Switched {
    pub graph: SignedGraph,
    pub orientation: Orientation,
    pub flow: Option<IntFlow>,
}

/// Switches at every vertex of `set`: signs flip on the cut, half edges at
/// `set` reverse, flow values stay. Loops keep their sign.
pub fn switch(
    g: &SignedGraph,
    tau: &Orientation,
    flow: Option<&IntFlow>,
    set: &BTreeSet<VertexId>,
) -> Switched {
    let mut graph = g.clone();
    let mut pairs = tau.tau.clone();
    for (e, edge) in g.edges().iter().enumerate() {
        let in_u = set.contains(&edge.u);
        let in_v = set.contains(&edge.v);
        if in_u != in_v {
            graph.edges[e].sign = edge.sign.flip();
        }
        if in_u {
            pairs[e][0] = -pairs[e][0];
        }
        if in_v {
            pairs[e][1] = -pairs[e][1];
        }
    }
    let orientation = Orientation { tau: pairs };
    let flow = flow.map(|f| IntFlow {
        orientation: orientation.clone(),
        values: f.values.clone(),
        k: f.k,
    });
    Switched {
        graph,
        orientation,
        flow,
    }
}

/// Edgewise integer combination of flows sharing one orientation.
pub fn combine_flows(terms: &[(i32, &IntFlow)]) -> Result<IntFlow> {
    let Some((_, first)) = terms.first() else {
        return Err(FlowError::Precondition("no flows to combine".into()));
    };
    let tau = first.orientation.clone();
    let m = first.values.len();
    let mut values = vec![0i32; m];
    for (c, f) in terms {
        if f.orientation != tau || f.values.len() != m {
            return Err(FlowError::MixedOrientations);
        }
        for (acc, v) in values.iter_mut().zip(&f.values) {
            *acc += c * v;
        }
    }
    Ok(IntFlow::new(tau, values))
}

/// Contracted graph together with the maps needed to move flows back.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: SignedGraph,
    /// old vertex -> new vertex
    pub vertex_map: Vec<VertexId>,
    /// new edge -> old edge
    pub edge_map: Vec<EdgeId>,
}

impl Contraction {
    pub fn orientation(&self, tau: &Orientation) -> Orientation {
        tau.restrict(&self.edge_map)
    }

    /// old edge -> new edge, `None` for deleted edges.
    pub fn inverse_edge_map(&self, old_edges: usize) -> Vec<Option<EdgeId>> {
        let mut inv = vec![None; old_edges];
        for (new, &old) in self.edge_map.iter().enumerate() {
            inv[old] = Some(new);
        }
        inv
    }

    /// Values on the original graph; deleted edges get 0.
    pub fn lift_values(&self, values: &[i32], old_edges: usize) -> Vec<i32> {
        let mut out = vec![0; old_edges];
        for (new, &old) in self.edge_map.iter().enumerate() {
            out[old] = values[new];
        }
        out
    }
}

/// Contracts every edge of `set`: endpoints are identified, positive
/// contracted edges disappear and negative ones survive as negative loops.
pub fn contract(g: &SignedGraph, set: &EdgeSet) -> Contraction {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &e in set {
        let a = find(&mut parent, g.edge(e).u);
        let b = find(&mut parent, g.edge(e).v);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
    }
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    let mut vertex_map = vec![0; g.vertex_count()];
    let mut count = 0;
    for v in g.vertices() {
        let r = find(&mut parent, v);
        if new_id[r] == usize::MAX {
            new_id[r] = count;
            count += 1;
        }
        vertex_map[v] = new_id[r];
    }
    let mut graph = SignedGraph::new(count);
    let mut edge_map = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if set.contains(&e) && edge.sign == Sign::Positive {
            continue;
        }
        graph.edges.push(Edge {
            u: vertex_map[edge.u],
            v: vertex_map[edge.v],
            sign: edge.sign,
        });
        edge_map.push(e);
    }
    Contraction {
        graph,
        vertex_map,
        edge_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::*;

    fn d2() -> SignedGraph {
        SignedGraph::from_edges([(0, 1, Positive), (0, 1, Negative)])
    }

    fn sb() -> SignedGraph {
        SignedGraph::from_edges([(0, 0, Negative), (0, 0, Negative)])
    }

    fn k4() -> SignedGraph {
        SignedGraph::from_edges([
            (0, 1, Positive),
            (0, 2, Positive),
            (0, 3, Positive),
            (1, 2, Positive),
            (1, 3, Positive),
            (2, 3, Positive),
        ])
    }

    #[test]
    fn build_examples() {
        assert_eq!(d2().negative_edges().len(), 1);
        let s = sb();
        assert_eq!(s.vertex_count(), 1);
        assert_eq!(s.degree(0), 4);
        let k = k4();
        assert_eq!((k.vertex_count(), k.edge_count()), (4, 6));
        assert!(k.negative_edges().is_empty());
        assert_eq!(SignedGraph::from_edges([]).edge_count(), 0);
    }

    #[test]
    fn default_orientation_rules() {
        let g = SignedGraph::from_edges([(0, 1, Positive), (0, 1, Negative), (2, 2, Negative), (3, 2, Positive)]);
        let t = Orientation::default_for(&g);
        assert_eq!(t.pair(0), [1, -1]);
        assert_eq!(t.pair(1), [1, 1]);
        assert_eq!(t.pair(2), [1, 1]);
        // smaller endpoint is vertex 2 at end 1
        assert_eq!(t.pair(3), [-1, 1]);
        assert!(t.is_valid_for(&g));
    }

    #[test]
    fn boundary_examples() {
        let g = SignedGraph::from_edges([(0, 1, Positive)]);
        let t = Orientation::default_for(&g);
        assert_eq!(boundary(&g, &t, &[3], 0).unwrap(), 3);
        assert_eq!(boundary(&g, &t, &[3], 1).unwrap(), -3);
        assert!(boundary(&g, &t, &[3], 7).is_err());

        let l = SignedGraph::from_edges([(0, 0, Negative)]);
        let tl = Orientation::default_for(&l);
        assert_eq!(boundary(&l, &tl, &[1], 0).unwrap(), 2);

        let s = sb();
        let ts = Orientation::default_for(&s);
        assert_eq!(boundary(&s, &ts, &[1, -1], 0).unwrap(), 0);
    }

    #[test]
    fn verify_examples() {
        let s = sb();
        let f = IntFlow::with_bound(Orientation::default_for(&s), vec![1, -1], 2);
        assert!(verify_flow(&s, &f, true).is_valid());

        let c4 = SignedGraph::from_edges([(0, 1, Positive), (1, 2, Positive), (2, 3, Positive), (3, 0, Positive)]);
        let t = Orientation::default_for(&c4);
        // around the circuit 0-1-2-3-0: edge 3 is stored as (3,0) so its default
        // orientation points away from 0, the opposite way round.
        let f = IntFlow::with_bound(t, vec![1, 1, 1, -1], 2);
        assert!(verify_flow(&c4, &f, true).is_valid());

        let d = d2();
        let t = Orientation::default_for(&d);
        for a in [-1, 1] {
            for b in [-1, 1] {
                let f = IntFlow::with_bound(t.clone(), vec![a, b], 2);
                assert!(!verify_flow(&d, &f, true).is_valid());
            }
        }
    }

    #[test]
    fn verify_reports_bad_orientation_and_bounds() {
        let g = SignedGraph::from_edges([(0, 1, Negative)]);
        let bad = Orientation::from_pairs(vec![[1, -1]]);
        let f = IntFlow::with_bound(bad, vec![5], 3);
        let r = verify_flow(&g, &f, true);
        assert_eq!(r.orientation_errors, vec![0]);
        assert_eq!(r.bound_violations, vec![0]);
        assert!(!r.is_valid());
    }

    #[test]
    fn switch_examples() {
        let d = d2();
        let t = Orientation::default_for(&d);
        let s = switch(&d, &t, None, &BTreeSet::from([0]));
        assert_eq!(s.graph.sign(0), Negative);
        assert_eq!(s.graph.sign(1), Positive);
        assert_eq!(s.graph.negative_edges().len(), 1);
        assert!(s.orientation.is_valid_for(&s.graph));

        let b = sb();
        let tb = Orientation::default_for(&b);
        let s = switch(&b, &tb, None, &BTreeSet::from([0]));
        assert_eq!(s.graph, b);
        assert!(s.orientation.is_valid_for(&b));

        let f = IntFlow::with_bound(tb.clone(), vec![1, -1], 2);
        let s = switch(&b, &tb, Some(&f), &BTreeSet::from([0]));
        assert!(verify_flow(&s.graph, s.flow.as_ref().unwrap(), true).is_valid());
    }

    #[test]
    fn combine_examples() {
        let s = sb();
        let t = Orientation::default_for(&s);
        let f = IntFlow::new(t.clone(), vec![1, -1]);
        let z = combine_flows(&[(1, &f), (-1, &f)]).unwrap();
        assert_eq!(z.values(), &[0, 0]);
        let other = IntFlow::new(Orientation::from_pairs(vec![[-1, -1], [1, 1]]), vec![1, -1]);
        assert!(matches!(
            combine_flows(&[(1, &f), (1, &other)]),
            Err(FlowError::MixedOrientations)
        ));
    }

    #[test]
    fn contraction_examples() {
        let d = d2();
        let c = contract(&d, &EdgeSet::from([0]));
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edge_count(), 1);
        assert_eq!(c.graph.sign(0), Negative);
        assert!(c.graph.edge(0).is_loop());

        // contracting the negative edge keeps it as a negative loop; the
        // positive edge becomes a positive loop
        let c = contract(&d, &EdgeSet::from([1]));
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edge_count(), 2);
        assert_eq!(c.edge_map, vec![0, 1]);
        assert!(c.graph.edges().iter().all(Edge::is_loop));

        let k = k4();
        // triangle 0-1-2 = edges 0, 1, 3
        let c = contract(&k, &EdgeSet::from([0, 1, 3]));
        assert_eq!(c.graph.vertex_count(), 2);
        assert_eq!(c.graph.edge_count(), 3);
        assert!(c.graph.edges().iter().all(|e| !e.is_loop() && e.sign == Positive));
    }
}
