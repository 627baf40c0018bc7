use std::collections::BTreeSet;

use super::{checked, lift_z2_to_3flow, two_flow};
use crate::analysis::support_components;
use crate::error::{FlowError, Result};
use crate::graph::{EdgeId, EdgeSet, IntFlow, Orientation, Sign, SignedGraph, VertexId};
use crate::search::{SearchOutcome, ValueSearch};

/// 5-flow for a Z2-flow support with an odd number (at least three) of odd
/// components: the flow is acyclic outside the support after contracting it,
/// support edges have magnitude 1..=3 and negative support loops 1 or 2.
pub fn five_flow_odd_components(g: &SignedGraph, tau: &Orientation, support: &EdgeSet) -> Result<IntFlow> {
    let comps = support_components(g, support)?;
    let odd = comps.odd_count();
    if odd % 2 == 0 || odd < 3 {
        return Err(FlowError::Precondition(format!(
            "{odd} odd components; need an odd number of at least three"
        )));
    }
    if !connected_through(g, &g.all_edges()) {
        return Err(FlowError::Disconnected);
    }
    let values = solve(g, tau, support)?;
    check_conditions(g, support, &values)?;
    checked(g, IntFlow::with_bound(tau.clone(), values, 5), "odd-component 5-flow")
}

fn connected_through(g: &SignedGraph, edges: &EdgeSet) -> bool {
    let touched: BTreeSet<VertexId> = edges.iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect();
    crate::analysis::edge_components(g, edges).len() <= 1
        && (touched.len() == g.vertex_count() || g.vertex_count() <= 1)
}

/// Acyclic outside the contracted support, and support magnitudes within range.
pub(crate) fn check_conditions(g: &SignedGraph, support: &EdgeSet, values: &[i32]) -> Result<()> {
    let labels = labels(g, support);
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in g.edge_ids() {
        let edge = g.edge(e);
        if support.contains(&e) {
            let a = values[e].abs();
            let limit = if edge.is_loop() && edge.sign == Sign::Negative { 2 } else { 3 };
            if a < 1 || a > limit {
                return Err(FlowError::Postcondition(format!("support edge {e} has value {}", values[e])));
            }
        } else if values[e] != 0 {
            let x = find(&mut parent, labels[edge.u]);
            let y = find(&mut parent, labels[edge.v]);
            if x == y {
                return Err(FlowError::Postcondition(format!(
                    "edge {e} closes a cycle outside the contracted support"
                )));
            }
            parent[x] = y;
        }
    }
    Ok(())
}

/// Component label per vertex: the smallest vertex of its support component,
/// or the vertex itself.
fn labels(g: &SignedGraph, support: &EdgeSet) -> Vec<usize> {
    let mut label: Vec<usize> = g.vertices().collect();
    for (vs, _) in crate::analysis::edge_components(g, support) {
        let m = *vs.iter().next().expect("nonempty");
        for v in vs {
            label[v] = m;
        }
    }
    label
}

/// Subgraph on the same vertices keeping `keep`, plus negative loops at the
/// given vertices with both halves oriented as given. Returns the graph, its
/// orientation and the new-to-old edge map (loops are not mapped).
fn sub_with_loops(
    g: &SignedGraph,
    tau: &Orientation,
    keep: &EdgeSet,
    loops: &[(VertexId, i8)],
) -> (SignedGraph, Orientation, Vec<EdgeId>) {
    let (mut sub, map) = g.edge_subgraph(keep);
    let mut t = tau.restrict(&map);
    for &(v, dir) in loops {
        sub.add_edge(v, v, Sign::Negative).expect("vertex exists");
        t.push([dir, dir]);
    }
    (sub, t, map)
}

fn solve(g: &SignedGraph, tau: &Orientation, support: &EdgeSet) -> Result<Vec<i32>> {
    let m = g.edge_count();
    let comps = support_components(g, support)?;
    let label = labels(g, support);

    // reduce to the support plus a spanning tree of the contracted graph
    let mut active = support.clone();
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in g.edge_ids().filter(|e| !support.contains(e)) {
        let a = find(&mut parent, label[g.edge(e).u]);
        let b = find(&mut parent, label[g.edge(e).v]);
        if a != b {
            parent[a] = b;
            active.insert(e);
        }
    }
    // prune leaves outside the support
    let in_support: BTreeSet<VertexId> = comps.components.iter().flat_map(|c| c.vertices.iter().copied()).collect();
    loop {
        let deg = g.degrees_in(&active);
        let leaf_edge = active.iter().copied().find(|&e| {
            let edge = g.edge(e);
            !support.contains(&e)
                && [edge.u, edge.v].iter().any(|&x| !in_support.contains(&x) && deg[x] == 1)
        });
        match leaf_edge {
            Some(e) => {
                active.remove(&e);
            }
            None => break,
        }
    }
    let tree: Vec<EdgeId> = active.iter().copied().filter(|e| !support.contains(e)).collect();

    // leaves of the contracted tree are support components with one tree edge
    let mut candidates = Vec::new();
    for (i, c) in comps.components.iter().enumerate() {
        let touching: Vec<EdgeId> = tree
            .iter()
            .copied()
            .filter(|&e| c.vertices.contains(&g.edge(e).u) != c.vertices.contains(&g.edge(e).v))
            .collect();
        if touching.len() != 1 {
            continue;
        }
        let b = touching[0];
        let (x_u, x_v) = if c.vertices.contains(&g.edge(b).u) {
            (g.edge(b).u, g.edge(b).v)
        } else {
            (g.edge(b).v, g.edge(b).u)
        };
        let v_comp = comps.component_of(x_v);
        let v_odd = v_comp.is_some_and(|j| comps.components[j].is_odd());
        let rank = match (c.is_odd(), v_odd) {
            (false, _) => 0,
            (true, false) => 1,
            (true, true) => 2,
        };
        candidates.push((rank, i, b, x_u, x_v, v_comp));
    }
    let &(rank, ui, b, x_u, x_v, v_comp) = candidates
        .iter()
        .min_by_key(|c| (c.0, c.1))
        .ok_or_else(|| FlowError::Postcondition("contracted tree has no component leaf".into()))?;
    let bu = &comps.components[ui];
    let end_at = |e: EdgeId, v: VertexId| if g.edge(e).u == v { 0usize } else { 1 };
    let mut rest = active.clone();
    for e in &bu.edges {
        rest.remove(e);
    }
    rest.remove(&b);
    let rest_support: EdgeSet = support.difference(&bu.edges).copied().collect();
    let mut values = vec![0i32; m];

    match rank {
        0 => {
            let (sub, t, map) = sub_with_loops(g, tau, &rest, &[]);
            let sub_support: EdgeSet = (0..map.len()).filter(|&i| rest_support.contains(&map[i])).collect();
            let sv = solve(&sub, &t, &sub_support)?;
            for (i, &old) in map.iter().enumerate() {
                values[old] = sv[i];
            }
            let f2 = two_flow(g, tau, &bu.edges)?;
            for &e in &bu.edges {
                values[e] = f2.value(e);
            }
        }
        1 => {
            let dir_v = tau.pair(b)[end_at(b, x_v)];
            let (g1, t1, map1) = sub_with_loops(g, tau, &rest, &[(x_v, dir_v)]);
            let e1 = map1.len();
            let mut s1: EdgeSet = (0..map1.len()).filter(|&i| rest_support.contains(&map1[i])).collect();
            s1.insert(e1);
            let g5 = solve(&g1, &t1, &s1)?;
            let a = g5[e1];
            if !(1..=2).contains(&a.abs()) {
                return Err(FlowError::Postcondition(format!("added loop valued {a}")));
            }
            for (i, &old) in map1.iter().enumerate() {
                values[old] = g5[i];
            }
            let dir_u = tau.pair(b)[end_at(b, x_u)];
            let (g2, t2, map2) = sub_with_loops(g, tau, &bu.edges, &[(x_u, dir_u)]);
            let e2 = map2.len();
            let mut g6 = two_flow(&g2, &t2, &g2.all_edges())?;
            if g6.value(e2) < 0 {
                g6 = g6.negated();
            }
            for (i, &old) in map2.iter().enumerate() {
                values[old] = a * g6.value(i);
            }
            values[b] = 2 * a;
        }
        _ => {
            let vi = v_comp.expect("odd neighbour is a component");
            let bv = &comps.components[vi];
            if let Some(v) = barbell_pair(g, tau, &rest, &rest_support, bu.edges.clone(), &bv.edges, b, support)? {
                values = v;
            } else {
                let fallback = search_fallback(g, tau, support, &active)?;
                values = fallback;
            }
        }
    }
    Ok(values)
}

/// `g3 + 2 g4` for two adjacent odd leaf components, with the sign of `g4`
/// chosen so negative support loops stay at magnitude 1 or 2.
#[allow(clippy::too_many_arguments)]
fn barbell_pair(
    g: &SignedGraph,
    tau: &Orientation,
    rest: &EdgeSet,
    rest_support: &EdgeSet,
    bu: EdgeSet,
    bv: &EdgeSet,
    b: EdgeId,
    support: &EdgeSet,
) -> Result<Option<Vec<i32>>> {
    let (sub, t, map) = sub_with_loops(g, tau, rest, &[]);
    let sub_support: EdgeSet = (0..map.len()).filter(|&i| rest_support.contains(&map[i])).collect();
    let g3 = lift_z2_to_3flow(&sub, &t, &sub.all_edges(), &sub_support)?;
    let pair: EdgeSet = bu.union(bv).copied().collect();
    let mut ambient = pair.clone();
    ambient.insert(b);
    let g4 = lift_z2_to_3flow(g, tau, &ambient, &pair)?;
    let mut base = vec![0i32; g.edge_count()];
    for (i, &old) in map.iter().enumerate() {
        base[old] = g3.value(i);
    }
    for s in [1, -1] {
        let values: Vec<i32> = (0..g.edge_count()).map(|e| base[e] + 2 * s * g4.value(e)).collect();
        if check_conditions(g, support, &values).is_ok() {
            return Ok(Some(values));
        }
    }
    Ok(None)
}

fn search_fallback(g: &SignedGraph, tau: &Orientation, support: &EdgeSet, active: &EdgeSet) -> Result<Vec<i32>> {
    let label = labels(g, support);
    let mut forest = Vec::new();
    let candidates = g
        .edge_ids()
        .map(|e| {
            let edge = g.edge(e);
            if support.contains(&e) {
                if edge.is_loop() && edge.sign == Sign::Negative {
                    vec![1, -1, 2, -2]
                } else {
                    vec![1, -1, 2, -2, 3, -3]
                }
            } else if active.contains(&e) && label[edge.u] != label[edge.v] {
                forest.push((e, label[edge.u], label[edge.v]));
                vec![0, 2, -2, 1, -1, 4, -4, 3, -3]
            } else {
                vec![0]
            }
        })
        .collect();
    match ValueSearch::new(g, tau, candidates)
        .with_forest(g.vertex_count(), &forest)
        .with_budget(20_000_000)
        .solve()
    {
        SearchOutcome::Found(v) => Ok(v),
        other => Err(FlowError::SearchExhausted(format!("odd-component fallback: {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_flow, Sign::*};

    #[test]
    fn star_of_three_loops() {
        // hub 0 joined to 1, 2, 3, each carrying a negative loop
        let g = SignedGraph::from_edges([
            (0, 1, Positive),
            (0, 2, Positive),
            (0, 3, Positive),
            (1, 1, Negative),
            (2, 2, Negative),
            (3, 3, Negative),
        ]);
        let tau = Orientation::default_for(&g);
        let f = five_flow_odd_components(&g, &tau, &EdgeSet::from([3, 4, 5])).unwrap();
        assert!(verify_flow(&g, &f, true).is_valid());
        for e in 3..6 {
            assert!((1..=2).contains(&f.value(e).abs()));
        }
    }

    #[test]
    fn path_of_three_loops_and_even_component() {
        // loops at 0, 1, 2 on a path; an even triangle hanging off 2
        let g = SignedGraph::from_edges([
            (0, 0, Negative),
            (1, 1, Negative),
            (2, 2, Negative),
            (0, 1, Positive),
            (1, 2, Positive),
            (2, 3, Positive),
            (3, 4, Negative),
            (4, 5, Negative),
            (5, 3, Positive),
        ]);
        let tau = Orientation::default_for(&g);
        let support = EdgeSet::from([0, 1, 2, 6, 7, 8]);
        let f = five_flow_odd_components(&g, &tau, &support).unwrap();
        assert!(verify_flow(&g, &f, false).is_valid());
        for e in [6, 7, 8] {
            assert!(f.value(e).abs() >= 1);
        }
    }

    #[test]
    fn rejects_even_count() {
        let g = SignedGraph::from_edges([(0, 0, Negative), (1, 1, Negative), (0, 1, Positive)]);
        let tau = Orientation::default_for(&g);
        assert!(five_flow_odd_components(&g, &tau, &EdgeSet::from([0, 1])).is_err());
    }
}
