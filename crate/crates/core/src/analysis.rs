//! Balance, unbalanced circuits, eulerian supports, bridges and flow-admissibility.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{FlowError, Result};
use crate::graph::{EdgeId, EdgeSet, Sign, SignedGraph, VertexId};
use crate::walk::{Circuit, Path};

/// Certificate for [`balance`]: either a switching set that makes every edge of
/// the examined subgraph positive, or an unbalanced circuit inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BalanceWitness {
    Balanced { switching: BTreeSet<VertexId> },
    Unbalanced { circuit: Circuit },
}

impl BalanceWitness {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceWitness::Balanced { .. })
    }
}

/// Connected components over all vertices (isolated vertices included).
pub fn connected_components(g: &SignedGraph) -> Vec<Vec<VertexId>> {
    let inc = g.incidence();
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for h in &inc[v] {
                let w = g.edge(h.edge).other(v);
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &SignedGraph) -> bool {
    connected_components(g).len() <= 1
}

/// Components of the subgraph formed by `edges` (only vertices they touch),
/// ordered by smallest vertex.
pub fn edge_components(g: &SignedGraph, edges: &EdgeSet) -> Vec<(BTreeSet<VertexId>, EdgeSet)> {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in edges {
        let a = find(&mut parent, g.edge(e).u);
        let b = find(&mut parent, g.edge(e).v);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, (BTreeSet<VertexId>, EdgeSet)> =
        Default::default();
    for &e in edges {
        let r = find(&mut parent, g.edge(e).u);
        let entry = by_root.entry(r).or_default();
        entry.0.insert(g.edge(e).u);
        entry.0.insert(g.edge(e).v);
        entry.1.insert(e);
    }
    let mut comps: Vec<_> = by_root.into_values().collect();
    comps.sort_by_key(|(vs, _)| *vs.iter().next().expect("nonempty"));
    comps
}

/// Subgraph-connected check ignoring vertices the edges do not touch.
pub fn edges_connected(g: &SignedGraph, edges: &EdgeSet) -> bool {
    edge_components(g, edges).len() <= 1
}

/// Potential-propagation balance test restricted to `within`.
pub fn balance(g: &SignedGraph, within: &EdgeSet) -> BalanceWitness {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for &e in within {
        let edge = g.edge(e);
        adj[edge.u].push(e);
        if !edge.is_loop() {
            adj[edge.v].push(e);
        }
    }
    let mut potential = vec![0i8; n];
    let mut parent: Vec<Option<EdgeId>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if potential[root] != 0 || adj[root].is_empty() {
            continue;
        }
        potential[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &adj[v] {
                let w = g.edge(e).other(v);
                if potential[w] == 0 {
                    potential[w] = potential[v] * g.sign(e).value() as i8;
                    parent[w] = Some(e);
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    for &e in within {
        let edge = g.edge(e);
        if edge.is_loop() {
            if edge.sign == Sign::Negative {
                return BalanceWitness::Unbalanced {
                    circuit: Circuit::new(vec![edge.u], vec![e]),
                };
            }
            continue;
        }
        let consistent =
            potential[edge.u] as i32 * potential[edge.v] as i32 == edge.sign.value();
        if !consistent {
            return BalanceWitness::Unbalanced {
                circuit: tree_circuit(g, &parent, &depth, e),
            };
        }
    }
    let switching = (0..n).filter(|&v| potential[v] == -1).collect();
    BalanceWitness::Balanced { switching }
}

fn tree_circuit(g: &SignedGraph, parent: &[Option<EdgeId>], depth: &[usize], e: EdgeId) -> Circuit {
    let (u, v) = (g.edge(e).u, g.edge(e).v);
    let mut up_u = (vec![u], Vec::new());
    let mut up_v = (vec![v], Vec::new());
    let (mut a, mut b) = (u, v);
    while a != b {
        if depth[a] >= depth[b] {
            let pe = parent[a].expect("tree edge");
            a = g.edge(pe).other(a);
            up_u.0.push(a);
            up_u.1.push(pe);
        } else {
            let pe = parent[b].expect("tree edge");
            b = g.edge(pe).other(b);
            up_v.0.push(b);
            up_v.1.push(pe);
        }
    }
    let mut vertices = up_u.0;
    let mut edges = up_u.1;
    up_v.0.pop();
    vertices.extend(up_v.0.iter().rev());
    edges.extend(up_v.1.iter().rev());
    edges.push(e);
    Circuit::new(vertices, edges)
}

pub fn is_balanced(g: &SignedGraph) -> bool {
    balance(g, &g.all_edges()).is_balanced()
}

pub fn is_balanced_within(g: &SignedGraph, within: &EdgeSet) -> bool {
    balance(g, within).is_balanced()
}

/// An unbalanced circuit inside `within`, if one exists.
pub fn find_unbalanced_circuit(g: &SignedGraph, within: &EdgeSet) -> Option<Circuit> {
    match balance(g, within) {
        BalanceWitness::Unbalanced { circuit } => Some(circuit),
        BalanceWitness::Balanced { .. } => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportComponent {
    pub vertices: BTreeSet<VertexId>,
    pub edges: EdgeSet,
    pub negative_count: usize,
}

impl SupportComponent {
    pub fn is_odd(&self) -> bool {
        self.negative_count % 2 == 1
    }
}

/// Connected eulerian components of a support, tagged by negative-edge parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportComponents {
    pub components: Vec<SupportComponent>,
}

impl SupportComponents {
    pub fn odd_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_odd()).count()
    }

    /// Index of the component containing `v`, if any.
    pub fn component_of(&self, v: VertexId) -> Option<usize> {
        self.components.iter().position(|c| c.vertices.contains(&v))
    }
}

pub fn support_components(g: &SignedGraph, support: &EdgeSet) -> Result<SupportComponents> {
    let deg = g.degrees_in(support);
    if let Some(v) = deg.iter().position(|d| d % 2 == 1) {
        return Err(FlowError::NotEulerian(v));
    }
    let components = edge_components(g, support)
        .into_iter()
        .map(|(vertices, edges)| SupportComponent {
            negative_count: g.negative_count(&edges),
            vertices,
            edges,
        })
        .collect();
    Ok(SupportComponents { components })
}

/// Bridges of the whole graph by low-link; parallel edges and loops are never bridges.
pub fn bridges(g: &SignedGraph) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let inc = g.incidence();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent edge, next incidence index)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
            if *i < inc[v].len() {
                let h = inc[v][*i];
                *i += 1;
                let e = h.edge;
                if Some(e) == pe || g.edge(e).is_loop() {
                    continue;
                }
                let w = g.edge(e).other(v);
                if order[w] == usize::MAX {
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(p, _, _))) = (pe, stack.last()) {
                    low[p] = low[p].min(low[v]);
                    if low[v] > order[p] {
                        out.push(e);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Why a graph is (not) flow-admissible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibilityReason {
    Admissible,
    /// Unbalanced, and balanced once `edge` is removed: equivalent to a
    /// signature with `edge` as the only negative edge.
    OneNegativeEdge { edge: EdgeId },
    /// Removing `bridge` leaves a balanced component.
    BridgeWithBalancedSide { bridge: EdgeId },
}

impl std::fmt::Display for AdmissibilityReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdmissibilityReason::Admissible => f.write_str("admissible"),
            AdmissibilityReason::OneNegativeEdge { edge } => {
                write!(f, "one-negative-edge equivalent (edge {edge})")
            }
            AdmissibilityReason::BridgeWithBalancedSide { bridge } => {
                write!(f, "bridge {bridge} has a balanced side")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    pub reason: AdmissibilityReason,
}

/// Flow-admissibility, evaluated per connected component and conjoined.
pub fn is_flow_admissible(g: &SignedGraph) -> Admissibility {
    let bridge_list = bridges(g);
    for (vertices, edges) in edge_components(g, &g.all_edges()) {
        if !is_balanced_within(g, &edges) {
            for &e in &edges {
                let mut rest = edges.clone();
                rest.remove(&e);
                if is_balanced_within(g, &rest) {
                    return Admissibility {
                        admissible: false,
                        reason: AdmissibilityReason::OneNegativeEdge { edge: e },
                    };
                }
            }
        }
        for &b in bridge_list.iter().filter(|b| edges.contains(b)) {
            let mut rest = edges.clone();
            rest.remove(&b);
            let sides = edge_components(g, &rest);
            let (x, y) = (g.edge(b).u, g.edge(b).v);
            for end in [x, y] {
                let side_edges = sides
                    .iter()
                    .find(|(vs, _)| vs.contains(&end))
                    .map(|(_, es)| es.clone())
                    .unwrap_or_default();
                if is_balanced_within(g, &side_edges) {
                    return Admissibility {
                        admissible: false,
                        reason: AdmissibilityReason::BridgeWithBalancedSide { bridge: b },
                    };
                }
            }
        }
        let _ = vertices;
    }
    Admissibility {
        admissible: true,
        reason: AdmissibilityReason::Admissible,
    }
}

/// True iff every fundamental circuit of the spanning tree `tree` is balanced.
pub fn check_balanced_extension(g: &SignedGraph, tree: &EdgeSet) -> Result<bool> {
    let n = g.vertex_count();
    if n > 0 && tree.len() != n - 1 {
        return Err(FlowError::NotSpanningTree(format!(
            "{} edges for {} vertices",
            tree.len(),
            n
        )));
    }
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for &e in tree {
        if e >= g.edge_count() {
            return Err(FlowError::NotSpanningTree(format!("edge {e} does not exist")));
        }
        let edge = g.edge(e);
        if edge.is_loop() {
            return Err(FlowError::NotSpanningTree(format!("loop {e}")));
        }
        adj[edge.u].push(e);
        adj[edge.v].push(e);
    }
    let mut potential = vec![0i32; n];
    if n > 0 {
        potential[0] = 1;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &e in &adj[v] {
                let w = g.edge(e).other(v);
                if potential[w] == 0 {
                    potential[w] = potential[v] * g.sign(e).value();
                    queue.push_back(w);
                }
            }
        }
    }
    if potential.contains(&0) {
        return Err(FlowError::NotSpanningTree("does not reach every vertex".into()));
    }
    Ok(g.edge_ids().filter(|e| !tree.contains(e)).all(|e| {
        let edge = g.edge(e);
        potential[edge.u] * potential[edge.v] * edge.sign.value() == 1
    }))
}

/// Spanning forest of `edges` chosen greedily in edge-id order.
pub fn spanning_forest(g: &SignedGraph, edges: &EdgeSet) -> EdgeSet {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut forest = EdgeSet::new();
    for &e in edges {
        let a = find(&mut parent, g.edge(e).u);
        let b = find(&mut parent, g.edge(e).v);
        if a != b {
            parent[a] = b;
            forest.insert(e);
        }
    }
    forest
}

/// Shortest path using only `allowed` edges from any vertex of `sources` to any
/// vertex of `targets`; interior vertices avoid `blocked`. A source that is
/// also a target gives a trivial path.
pub fn shortest_path(
    g: &SignedGraph,
    allowed: &EdgeSet,
    sources: &BTreeSet<VertexId>,
    targets: &BTreeSet<VertexId>,
    blocked: &BTreeSet<VertexId>,
) -> Option<Path> {
    if let Some(&s) = sources.iter().find(|s| targets.contains(s)) {
        return Some(Path { vertices: vec![s], edges: vec![] });
    }
    let n = g.vertex_count();
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for &e in allowed {
        let edge = g.edge(e);
        if edge.is_loop() {
            continue;
        }
        adj[edge.u].push(e);
        adj[edge.v].push(e);
    }
    let mut prev: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        for &e in &adj[v] {
            let w = g.edge(e).other(v);
            if seen[w] {
                continue;
            }
            if targets.contains(&w) {
                prev[w] = Some((v, e));
                let mut vertices = vec![w];
                let mut edges = Vec::new();
                let mut x = w;
                while let Some((p, pe)) = prev[x] {
                    vertices.push(p);
                    edges.push(pe);
                    x = p;
                }
                vertices.reverse();
                edges.reverse();
                return Some(Path { vertices, edges });
            }
            if blocked.contains(&w) {
                continue;
            }
            seen[w] = true;
            prev[w] = Some((v, e));
            queue.push_back(w);
        }
    }
    None
}

/// Every circuit of the subgraph `edges` (loops and digons included), each once.
/// Stops after `limit` circuits.
pub fn simple_circuits(g: &SignedGraph, edges: &EdgeSet, limit: usize) -> Vec<Circuit> {
    let mut out = Vec::new();
    let n = g.vertex_count();
    for &first in edges {
        if out.len() >= limit {
            break;
        }
        let edge = g.edge(first);
        if edge.is_loop() {
            out.push(Circuit::new(vec![edge.u], vec![first]));
            continue;
        }
        let allowed: Vec<EdgeId> = edges
            .iter()
            .copied()
            .filter(|&e| e > first && !g.edge(e).is_loop())
            .collect();
        let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        for &e in &allowed {
            adj[g.edge(e).u].push(e);
            adj[g.edge(e).v].push(e);
        }
        // paths from v back to u
        let (u, v) = (edge.u, edge.v);
        let mut on_path = vec![false; n];
        let mut vs = vec![u, v];
        let mut es = vec![first];
        on_path[u] = true;
        on_path[v] = true;
        #[allow(clippy::too_many_arguments)]
        fn rec(
            g: &SignedGraph,
            adj: &[Vec<EdgeId>],
            target: VertexId,
            on_path: &mut [bool],
            vs: &mut Vec<VertexId>,
            es: &mut Vec<EdgeId>,
            out: &mut Vec<Circuit>,
            limit: usize,
        ) {
            let x = *vs.last().expect("nonempty");
            for &e in &adj[x] {
                if out.len() >= limit {
                    return;
                }
                let y = g.edge(e).other(x);
                if y == target {
                    let mut edges = es.clone();
                    edges.push(e);
                    out.push(Circuit::new(vs.clone(), edges));
                } else if !on_path[y] {
                    on_path[y] = true;
                    vs.push(y);
                    es.push(e);
                    rec(g, adj, target, on_path, vs, es, out, limit);
                    vs.pop();
                    es.pop();
                    on_path[y] = false;
                }
            }
        }
        rec(g, &adj, u, &mut on_path, &mut vs, &mut es, &mut out, limit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{switch, Orientation, Sign::*};

    fn k4(signs: [Sign; 6]) -> SignedGraph {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        SignedGraph::from_edges(pairs.iter().zip(signs).map(|(&(u, v), s)| (u, v, s)))
    }

    #[test]
    fn balance_examples() {
        let g = k4([Positive; 6]);
        match balance(&g, &g.all_edges()) {
            BalanceWitness::Balanced { switching } => assert!(switching.is_empty()),
            other => panic!("{other:?}"),
        }
        let d2 = SignedGraph::from_edges([(0, 1, Positive), (0, 1, Negative)]);
        match balance(&d2, &d2.all_edges()) {
            BalanceWitness::Unbalanced { circuit } => {
                circuit.validate(&d2).unwrap();
                assert_eq!(circuit.len(), 2);
                assert!(!circuit.is_balanced(&d2));
            }
            other => panic!("{other:?}"),
        }
        let c4 = SignedGraph::from_edges([(0, 1, Negative), (1, 2, Positive), (2, 3, Negative), (3, 0, Positive)]);
        match balance(&c4, &c4.all_edges()) {
            BalanceWitness::Balanced { switching } => {
                let s = switch(&c4, &Orientation::default_for(&c4), None, &switching);
                assert!(s.graph.negative_edges().is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbalanced_circuit_search() {
        let sb = SignedGraph::from_edges([(0, 0, Negative), (0, 0, Negative)]);
        let c = find_unbalanced_circuit(&sb, &sb.all_edges()).unwrap();
        assert_eq!(c.len(), 1);

        let two_factor = SignedGraph::from_edges([(0, 1, Positive), (1, 2, Positive), (2, 0, Positive)]);
        assert!(find_unbalanced_circuit(&two_factor, &two_factor.all_edges()).is_none());

        // balanced square 0..3 and unbalanced square 4..7
        let g = SignedGraph::from_edges([
            (0, 1, Negative),
            (1, 2, Negative),
            (2, 3, Positive),
            (3, 0, Positive),
            (4, 5, Negative),
            (5, 6, Positive),
            (6, 7, Positive),
            (7, 4, Positive),
        ]);
        let c = find_unbalanced_circuit(&g, &g.all_edges()).unwrap();
        c.validate(&g).unwrap();
        assert_eq!(c.edge_set(), EdgeSet::from([4, 5, 6, 7]));
    }

    #[test]
    fn support_component_examples() {
        let sb = SignedGraph::from_edges([(0, 0, Negative), (0, 0, Negative)]);
        let comps = support_components(&sb, &sb.all_edges()).unwrap();
        assert_eq!(comps.components.len(), 1);
        assert!(!comps.components[0].is_odd());

        // long barbell: loops at 0 and 1, joined by edge 2
        let lb = SignedGraph::from_edges([(0, 0, Negative), (1, 1, Negative), (0, 1, Positive)]);
        let comps = support_components(&lb, &EdgeSet::from([0, 1])).unwrap();
        assert_eq!(comps.odd_count(), 2);
        assert!(matches!(
            support_components(&lb, &lb.all_edges()),
            Err(FlowError::NotEulerian(_))
        ));
    }

    #[test]
    fn bridges_in_multigraph() {
        let g = SignedGraph::from_edges([(0, 1, Positive), (0, 1, Positive), (1, 2, Positive), (2, 2, Negative)]);
        assert_eq!(bridges(&g), vec![2]);
    }

    #[test]
    fn admissibility_examples() {
        let d2 = SignedGraph::from_edges([(0, 1, Positive), (0, 1, Negative)]);
        let a = is_flow_admissible(&d2);
        assert!(!a.admissible);
        assert!(matches!(a.reason, AdmissibilityReason::OneNegativeEdge { .. }));

        let sb = SignedGraph::from_edges([(0, 0, Negative), (0, 0, Negative)]);
        assert!(is_flow_admissible(&sb).admissible);

        let pendant = SignedGraph::from_edges([
            (0, 0, Negative),
            (0, 0, Negative),
            (0, 1, Positive),
            (1, 2, Positive),
            (2, 3, Positive),
            (3, 1, Positive),
        ]);
        let a = is_flow_admissible(&pendant);
        assert_eq!(a.reason, AdmissibilityReason::BridgeWithBalancedSide { bridge: 2 });
    }

    #[test]
    fn balanced_extension_examples() {
        let g = k4([Positive; 6]);
        assert!(check_balanced_extension(&g, &EdgeSet::from([0, 1, 2])).unwrap());
        let d2 = SignedGraph::from_edges([(0, 1, Positive), (0, 1, Negative)]);
        assert!(!check_balanced_extension(&d2, &EdgeSet::from([0])).unwrap());
        assert!(check_balanced_extension(&g, &EdgeSet::from([0, 1])).is_err());
        assert!(check_balanced_extension(&g, &EdgeSet::from([0, 1, 3])).is_err());
    }

    #[test]
    fn circuit_enumeration_counts() {
        // K4 has 7 circuits: 4 triangles and 3 squares
        let g = k4([Positive; 6]);
        let cs = simple_circuits(&g, &g.all_edges(), usize::MAX);
        assert_eq!(cs.len(), 7);
        for c in &cs {
            c.validate(&g).unwrap();
        }
        let d = SignedGraph::from_edges([(0, 1, Positive), (0, 1, Negative), (0, 0, Positive)]);
        assert_eq!(simple_circuits(&d, &d.all_edges(), usize::MAX).len(), 2);
    }

    #[test]
    fn shortest_path_avoids_blocked() {
        let g = SignedGraph::from_edges([(0, 1, Positive), (1, 2, Positive), (0, 3, Positive), (3, 4, Positive), (4, 2, Positive)]);
        let p = shortest_path(&g, &g.all_edges(), &BTreeSet::from([0]), &BTreeSet::from([2]), &BTreeSet::new()).unwrap();
        assert_eq!(p.edges, vec![0, 1]);
        let p = shortest_path(&g, &g.all_edges(), &BTreeSet::from([0]), &BTreeSet::from([2]), &BTreeSet::from([1])).unwrap();
        assert_eq!(p.edges, vec![2, 3, 4]);
        p.validate(&g).unwrap();
    }
}
