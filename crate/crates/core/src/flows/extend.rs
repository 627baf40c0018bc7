use super::checked;
use crate::error::{FlowError, Result};
use crate::graph::{boundaries, contract, HalfEdge, IntFlow, Orientation, Sign, SignedGraph};
use crate::walk::{trail_flow, Circuit};

/// Fills in the values of a balanced circuit whose other incident edges are
/// already valued, so that every circuit vertex balances and every circuit
/// edge is nonzero with magnitude at most `k - 1`.
pub fn extend_through_circuit(
    g: &SignedGraph,
    tau: &Orientation,
    circuit: &Circuit,
    values: &mut [i32],
    k: i32,
) -> Result<()> {
    circuit.validate(g)?;
    if !circuit.is_balanced(g) {
        return Err(FlowError::Precondition("circuit is unbalanced".into()));
    }
    for &e in &circuit.edges {
        values[e] = 0;
    }
    let b = boundaries(g, tau, values);
    let steps = circuit.steps(g);
    let len = steps.len();
    // particular solution with the first edge at 0
    let mut part = vec![0i64; len];
    for i in 1..len {
        let prev = steps[i - 1];
        let t_in = tau.get(HalfEdge { edge: prev.edge, end: 1 - prev.from_end }) as i64;
        let t_out = tau.get(HalfEdge { edge: steps[i].edge, end: steps[i].from_end }) as i64;
        let at = steps[i].from(g);
        part[i] = -t_out * (b[at] + t_in * part[i - 1]);
    }
    let last = steps[len - 1];
    let t_in = tau.get(HalfEdge { edge: last.edge, end: 1 - last.from_end }) as i64;
    let t_out = tau.get(HalfEdge { edge: steps[0].edge, end: steps[0].from_end }) as i64;
    let start = circuit.vertices[0];
    let closing = if len == 1 {
        // a positive loop contributes nothing; the vertex must already balance
        b[start]
    } else {
        b[start] + t_in * part[len - 1] + t_out * part[0]
    };
    if closing != 0 {
        return Err(FlowError::Precondition(
            "outside values do not sum to zero around the circuit".into(),
        ));
    }
    let unit = trail_flow(g, tau, &steps, 1);
    let limit = (k - 1) as i64;
    let coefficients = (1..=limit).flat_map(|c| [c, -c]).chain(std::iter::once(0));
    for c in coefficients {
        let vals: Vec<i64> = (0..len).map(|i| part[i] + c * unit[steps[i].edge] as i64).collect();
        if vals.iter().all(|&x| x != 0 && x.abs() <= limit) {
            for (s, x) in steps.iter().zip(vals) {
                values[s.edge] = x as i32;
            }
            return Ok(());
        }
    }
    Err(FlowError::SearchExhausted("no circulation constant extends the flow".into()))
}

/// Extends a k-NZF of `g / C` to a k-NZF of `g`, for a chordless all-positive
/// circuit `C` with two or three edges leaving it. `f` is indexed by the edges
/// of the contraction.
pub fn extend_flow_contraction(
    g: &SignedGraph,
    tau: &Orientation,
    circuit: &Circuit,
    f: &[i32],
    k: i32,
) -> Result<IntFlow> {
    circuit.validate(g)?;
    if circuit.edges.iter().any(|&e| g.sign(e) == Sign::Negative) {
        return Err(FlowError::Precondition("circuit has a negative edge".into()));
    }
    let on = circuit.vertex_set();
    let cedges = circuit.edge_set();
    let mut leaving = 0;
    for e in g.edge_ids().filter(|e| !cedges.contains(e)) {
        let edge = g.edge(e);
        match (on.contains(&edge.u), on.contains(&edge.v)) {
            (true, true) => {
                return Err(FlowError::Precondition(format!("edge {e} is a chord")));
            }
            (true, false) | (false, true) => leaving += 1,
            _ => {}
        }
    }
    if !(2..=3).contains(&leaving) {
        return Err(FlowError::Precondition(format!(
            "{leaving} edges leave the circuit; expected 2 or 3"
        )));
    }
    let c = contract(g, &cedges);
    if f.len() != c.graph.edge_count() {
        return Err(FlowError::Precondition("flow does not match the contraction".into()));
    }
    let mut values = c.lift_values(f, g.edge_count());
    extend_through_circuit(g, tau, circuit, &mut values, k)?;
    let flow = IntFlow::with_bound(tau.clone(), values, k);
    checked(g, flow, "extension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_flow, Sign::*};

    #[test]
    fn triangle_with_three_pendants_to_hub() {
        // triangle 0-1-2 with each vertex joined to 3 (K4)
        let g = SignedGraph::from_edges([
            (0, 1, Positive),
            (1, 2, Positive),
            (2, 0, Positive),
            (0, 3, Positive),
            (1, 3, Positive),
            (2, 3, Positive),
        ]);
        let tau = Orientation::default_for(&g);
        let c = Circuit::new(vec![0, 1, 2], vec![0, 1, 2]);
        let con = contract(&g, &c.edge_set());
        let ctau = con.orientation(&tau);
        // contracted graph: two vertices joined by edges 3, 4, 5
        let mut f = vec![1, 1, 0];
        f[2] = -(0..2).map(|i| ctau.coefficient(&con.graph, i, 0) * f[i]).sum::<i32>()
            * ctau.coefficient(&con.graph, 2, 0);
        assert!(verify_flow(&con.graph, &IntFlow::new(ctau, f.clone()), true).is_valid());
        let out = extend_flow_contraction(&g, &tau, &c, &f, 4).unwrap();
        assert!(verify_flow(&g, &out, true).is_valid());
    }

    #[test]
    fn two_attachments_at_one_vertex() {
        let g = SignedGraph::from_edges([
            (0, 1, Positive),
            (1, 2, Positive),
            (2, 0, Positive),
            (0, 3, Positive),
            (0, 3, Positive),
        ]);
        let tau = Orientation::default_for(&g);
        let c = Circuit::new(vec![0, 1, 2], vec![0, 1, 2]);
        let out = extend_flow_contraction(&g, &tau, &c, &[1, -1], 4).unwrap();
        assert!(verify_flow(&g, &out, true).is_valid());
        assert!(extend_flow_contraction(&g, &tau, &c, &[1, 1], 4).is_err());
    }
}
