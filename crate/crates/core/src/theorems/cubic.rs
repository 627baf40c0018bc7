use std::collections::BTreeSet;

use super::{add_scaled, finish, CaseTrace, FlowResult};
use crate::analysis::{balance, find_unbalanced_circuit, is_connected, is_flow_admissible, shortest_path, BalanceWitness};
use crate::coloring::{order_classes, three_edge_color, two_factor, EdgeColoring};
use crate::error::{FlowError, Result};
use crate::flows::{
    cover_circuit_4flow, extend_through_circuit, five_flow_odd_components, lift_z2_to_3flow, signed_circuit_flow,
    two_flow, SignedCircuit,
};
use crate::graph::{contract, switch, EdgeSet, Orientation, SignedGraph};
use crate::walk::{trail_flow, Circuit, Path};

fn union(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    a.union(b).copied().collect()
}

fn unbalanced_count(g: &SignedGraph, a: &EdgeSet, b: &EdgeSet) -> usize {
    two_factor(g, a, b).iter().filter(|c| !c.is_balanced(g)).count()
}

/// Whether the ordered coloring falls in the 10-flow case: R∪B has no
/// unbalanced circuit while R∪Y and B∪Y each have an odd number, at least
/// three, of unbalanced circuits.
pub fn exceptional_condition(g: &SignedGraph, coloring: &EdgeColoring) -> bool {
    let [r, b, y] = &coloring.classes;
    let ry = unbalanced_count(g, r, y);
    let by = unbalanced_count(g, b, y);
    unbalanced_count(g, r, b) == 0 && ry % 2 == 1 && ry >= 3 && by % 2 == 1 && by >= 3
}

fn check_cubic(g: &SignedGraph) -> Result<()> {
    if let Some(e) = g.edge_ids().find(|&e| g.edge(e).is_loop()) {
        return Err(FlowError::HasLoop(e));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) != 3) {
        return Err(FlowError::NotCubic(v, g.degree(v)));
    }
    if !is_connected(g) {
        return Err(FlowError::Disconnected);
    }
    Ok(())
}

/// Nowhere-zero 8-flow (10-flow in the exceptional case) of a connected,
/// loopless, 3-edge-colorable cubic signed graph. The flow is given under the
/// default orientation of `g`.
pub fn cubic_flow(g: &SignedGraph, coloring: Option<EdgeColoring>) -> Result<FlowResult> {
    check_cubic(g)?;
    let adm = is_flow_admissible(g);
    if !adm.admissible {
        return Err(FlowError::NotAdmissible(adm.reason.to_string()));
    }
    let coloring = match coloring {
        Some(c) if c.is_proper(g) => c,
        Some(_) => return Err(FlowError::NotColorable),
        None => three_edge_color(g)?,
    };
    let coloring = order_classes(&coloring, g);
    let [r, b, y] = coloring.classes.clone();
    let tau = Orientation::default_for(g);
    let all = g.all_edges();
    let m = g.edge_count();
    let rb = union(&r, &b);
    let parity = |s: &EdgeSet| g.negative_count(s) % 2;
    let mut trace = CaseTrace::default();

    if let Some(c) = two_factor(g, &r, &b).into_iter().find(|c| !c.is_balanced(g)) {
        trace.push("Case 1");
        let mut r1 = r.clone();
        if parity(&y) != parity(&r) {
            trace.push("Subcase 1.2");
            // swap R and B along the unbalanced circuit
            r1 = r.symmetric_difference(&c.edge_set()).copied().collect();
        }
        trace.push("Subcase 1.1");
        let f1 = lift_z2_to_3flow(g, &tau, &all, &rb)?;
        let f2 = lift_z2_to_3flow(g, &tau, &all, &union(&r1, &y))?;
        let mut values = f1.values().to_vec();
        add_scaled(&mut values, 3, f2.values());
        return finish(g, &tau, values, 8, trace, false);
    }

    trace.push("Case 2");
    let f3 = two_flow(g, &tau, &rb)?;
    let ry_odd = unbalanced_count(g, &r, &y);
    let by_odd = unbalanced_count(g, &b, &y);
    let mut values = vec![0; m];
    if ry_odd.is_multiple_of(2) {
        trace.push("Subcase 2.1");
        let f2 = lift_z2_to_3flow(g, &tau, &all, &union(&r, &y))?;
        add_scaled(&mut values, 3, f3.values());
        add_scaled(&mut values, 1, f2.values());
        finish(g, &tau, values, 6, trace, false)
    } else if ry_odd == 1 || by_odd == 1 {
        trace.push("Subcase 2.2");
        let x = if ry_odd == 1 { &r } else { &b };
        let f4 = one_odd_circuit(g, &tau, x, &y, &mut trace)?;
        add_scaled(&mut values, 1, f3.values());
        add_scaled(&mut values, 2, &f4);
        finish(g, &tau, values, 8, trace, false)
    } else {
        trace.push("Subcase 2.3");
        let f6 = five_flow_odd_components(g, &tau, &union(&r, &y))?;
        add_scaled(&mut values, 5, f3.values());
        add_scaled(&mut values, 1, f6.values());
        finish(g, &tau, values, 10, trace, true)
    }
}

/// 4-flow whose support contains the 2-factor `x ∪ y`, which has exactly one
/// unbalanced circuit.
fn one_odd_circuit(
    g: &SignedGraph,
    tau: &Orientation,
    x: &EdgeSet,
    y: &EdgeSet,
    trace: &mut CaseTrace,
) -> Result<Vec<i32>> {
    let m = g.edge_count();
    let (odd, balanced): (Vec<Circuit>, Vec<Circuit>) =
        two_factor(g, x, y).into_iter().partition(|c| !c.is_balanced(g));
    let c1 = odd.into_iter().next().expect("exactly one unbalanced circuit");
    let mut flip = BTreeSet::new();
    for c in &balanced {
        match balance(g, &c.edge_set()) {
            BalanceWitness::Balanced { switching } => flip.extend(switching),
            BalanceWitness::Unbalanced { .. } => unreachable!("circuit is balanced"),
        }
    }
    let sw = switch(g, tau, None, &flip);
    let (gs, ts) = (&sw.graph, &sw.orientation);
    let squeezed: EdgeSet = balanced.iter().flat_map(|c| c.edges.iter().copied()).collect();
    let h = contract(gs, &squeezed);
    let th = h.orientation(ts);
    let inv = h.inverse_edge_map(m);
    let c1h = Circuit::new(
        c1.vertices.iter().map(|&v| h.vertex_map[v]).collect(),
        c1.edges.iter().map(|&e| inv[e].expect("circuit edge survives")).collect(),
    );
    let c1h_edges = c1h.edge_set();
    let rest: EdgeSet = h.graph.edge_ids().filter(|e| !c1h_edges.contains(e)).collect();

    let fh = match find_unbalanced_circuit(&h.graph, &rest) {
        Some(other) => {
            trace.push("Subcase 2.2.1");
            let allowed: EdgeSet = rest.difference(&other.edge_set()).copied().collect();
            let path: Path = shortest_path(
                &h.graph,
                &allowed,
                &c1h.vertex_set(),
                &other.vertex_set(),
                &BTreeSet::new(),
            )
            .ok_or(FlowError::Disconnected)?;
            let q = SignedCircuit::long_barbell(c1h, path, other);
            signed_circuit_flow(&h.graph, &th, &q)?
        }
        None => {
            trace.push("Subcase 2.2.2");
            cover_circuit_4flow(&h.graph, &th, &c1h)?.flow
        }
    };
    let mut values = h.lift_values(fh.values(), m);
    for c in &balanced {
        let on = c.vertex_set();
        let own = c.edge_set();
        let touched = gs.edge_ids().any(|e| {
            let edge = gs.edge(e);
            !own.contains(&e) && values[e] != 0 && (on.contains(&edge.u) || on.contains(&edge.v))
        });
        if touched {
            extend_through_circuit(gs, ts, c, &mut values, 4)?;
        } else {
            add_scaled(&mut values, 1, &trail_flow(gs, ts, &c.steps(gs), 1));
        }
    }
    Ok(values)
}
