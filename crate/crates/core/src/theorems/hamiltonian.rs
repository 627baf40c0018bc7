use std::collections::BTreeSet;

use super::{add_scaled, finish, CaseTrace, FlowResult};
use crate::analysis::{find_unbalanced_circuit, is_balanced, is_flow_admissible};
use crate::error::{FlowError, Result};
use crate::flows::{cover_circuit_4flow, lift_z2_to_3flow, lift_z3_to_4flow, two_flow, z3_flow_phi2};
use crate::graph::{EdgeId, EdgeSet, Orientation, Sign, SignedGraph, VertexId};
use crate::walk::{trail_flow, Circuit};

/// Builds the circuit through `order`, taking the lowest unused edge between
/// consecutive vertices.
pub fn hamilton_circuit(g: &SignedGraph, order: &[VertexId]) -> Result<Circuit> {
    let n = order.len();
    if n == 0 {
        return Err(FlowError::Precondition("empty vertex order".into()));
    }
    let mut used = BTreeSet::new();
    let mut edges = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (order[i], order[(i + 1) % n]);
        if a >= g.vertex_count() || b >= g.vertex_count() {
            return Err(FlowError::UnknownVertex(a.max(b)));
        }
        let e = g
            .edge_ids()
            .find(|e| {
                let edge = g.edge(*e);
                !used.contains(e) && ((edge.u, edge.v) == (a, b) || (edge.u, edge.v) == (b, a))
            })
            .ok_or_else(|| FlowError::Precondition(format!("no edge joins {a} and {b}")))?;
        used.insert(e);
        edges.push(e);
    }
    let c = Circuit::new(order.to_vec(), edges);
    c.validate(g)?;
    Ok(c)
}

/// Balanced circuit through chord `e` made of `e` and one arc of `c0`.
fn chord_circuit(g: &SignedGraph, c0: &Circuit, e: EdgeId) -> EdgeSet {
    let edge = g.edge(e);
    if edge.is_loop() {
        return EdgeSet::from([e]);
    }
    let n = c0.len();
    let pu = c0.vertices.iter().position(|&x| x == edge.u).expect("hamiltonian");
    let pv = c0.vertices.iter().position(|&x| x == edge.v).expect("hamiltonian");
    let (lo, hi) = (pu.min(pv), pu.max(pv));
    let inner: EdgeSet = (lo..hi).map(|i| c0.edges[i]).collect();
    let outer: EdgeSet = (0..n).filter(|i| !(lo..hi).contains(i)).map(|i| c0.edges[i]).collect();
    let odd = |arc: &EdgeSet| (g.negative_count(arc) + (edge.sign == Sign::Negative) as usize) % 2 == 1;
    let mut arc = if odd(&inner) { outer } else { inner };
    arc.insert(e);
    arc
}

fn sym_diff(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    a.symmetric_difference(b).copied().collect()
}

/// Nowhere-zero 8-flow of a flow-admissible signed graph with Hamilton
/// circuit `c0`, under the default orientation.
pub fn hamiltonian_flow(g: &SignedGraph, c0: &Circuit) -> Result<FlowResult> {
    c0.validate(g)?;
    if c0.len() != g.vertex_count() || c0.vertex_set().len() != g.vertex_count() {
        return Err(FlowError::Precondition("circuit is not hamiltonian".into()));
    }
    let adm = is_flow_admissible(g);
    if !adm.admissible {
        return Err(FlowError::NotAdmissible(adm.reason.to_string()));
    }
    if let Some(e) = g.edge_ids().find(|&e| g.edge(e).is_loop() && g.sign(e) == Sign::Negative) {
        return Err(FlowError::Precondition(format!(
            "negative loop {e} lies on no balanced circuit through the Hamilton circuit"
        )));
    }
    let tau = Orientation::default_for(g);
    let m = g.edge_count();
    let ce = c0.edge_set();
    let chords: Vec<EdgeId> = g.edge_ids().filter(|e| !ce.contains(e)).collect();
    let h = chords.iter().fold(EdgeSet::new(), |acc, &e| sym_diff(&acc, &chord_circuit(g, c0, e)));
    let c0_flow = trail_flow(g, &tau, &c0.steps(g), 1);
    let mut trace = CaseTrace::default();
    let mut values = vec![0; m];

    if c0.is_balanced(g) {
        trace.push("Case 1");
        if is_balanced(g) {
            trace.push("balanced graph: f + 2g over two even subgraphs");
            let f = two_flow(g, &tau, &h)?;
            add_scaled(&mut values, 1, f.values());
            add_scaled(&mut values, 2, &c0_flow);
            return finish(g, &tau, values, 4, trace, false);
        }
        trace.push("2f1+f2");
        let (phi, _) = z3_flow_phi2(g, &tau, &ce)?;
        let f1 = lift_z3_to_4flow(g, &phi)?;
        add_scaled(&mut values, 2, f1.values());
        add_scaled(&mut values, 1, &c0_flow);
        return finish(g, &tau, values, 8, trace, false);
    }

    trace.push("Case 2");
    match find_unbalanced_circuit(g, &h) {
        None => {
            trace.push("f3+2f4");
            let f3 = two_flow(g, &tau, &h)?;
            let f4 = cover_circuit_4flow(g, &tau, c0)?.flow;
            add_scaled(&mut values, 1, f3.values());
            add_scaled(&mut values, 2, f4.values());
        }
        Some(c0p) => {
            trace.push("3f5+f6");
            let cp = c0p.edge_set();
            let f5 = lift_z2_to_3flow(g, &tau, &g.all_edges(), &h)?;
            let ambient: EdgeSet = ce.union(&cp).copied().collect();
            let f6 = lift_z2_to_3flow(g, &tau, &ambient, &sym_diff(&ce, &cp))?;
            add_scaled(&mut values, 3, f5.values());
            add_scaled(&mut values, 1, f6.values());
        }
    }
    finish(g, &tau, values, 8, trace, false)
}
