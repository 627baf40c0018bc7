use super::checked;
use crate::analysis::{bridges, support_components};
use crate::error::{FlowError, Result};
use crate::graph::{EdgeSet, IntFlow, ModFlow, Orientation, SignedGraph};
use crate::search::{SearchOutcome, ValueSearch};

const BUDGET: u64 = 20_000_000;

/// Integer 4-flow congruent to `f1` modulo 3, with every edge of `supp(f1)`
/// valued ±1 or ±2.
pub fn lift_z3_to_4flow(g: &SignedGraph, f1: &ModFlow) -> Result<IntFlow> {
    if f1.modulus() != 3 {
        return Err(FlowError::Precondition("expected a Z3-flow".into()));
    }
    if !f1.is_flow(g) {
        return Err(FlowError::Precondition("input is not a Z3-flow".into()));
    }
    if let Some(&b) = bridges(g).first() {
        return Err(FlowError::HasBridge(b));
    }
    let candidates = f1
        .values()
        .iter()
        .map(|r| match r {
            1 => vec![1, -2],
            2 => vec![-1, 2],
            _ => vec![0, 3, -3],
        })
        .collect();
    let tau = f1.orientation();
    match ValueSearch::new(g, tau, candidates).with_budget(BUDGET).solve() {
        SearchOutcome::Found(values) => {
            checked(g, IntFlow::with_bound(tau.clone(), values, 4), "Z3 lift")
        }
        other => Err(FlowError::SearchExhausted(format!("Z3 lift: {other:?}"))),
    }
}

/// 3-flow with `E_{±1}` exactly `support` and every other nonzero edge valued
/// ±2, drawn from `ambient`, acyclic after contracting the support components.
/// `support` must be eulerian with an even number of odd components.
pub fn lift_z2_to_3flow(
    g: &SignedGraph,
    tau: &Orientation,
    ambient: &EdgeSet,
    support: &EdgeSet,
) -> Result<IntFlow> {
    if !support.is_subset(ambient) {
        return Err(FlowError::Precondition("support is not inside the ambient edges".into()));
    }
    let comps = support_components(g, support)?;
    if comps.odd_count() % 2 == 1 {
        return Err(FlowError::Precondition(format!(
            "{} odd components; the count must be even",
            comps.odd_count()
        )));
    }
    // node label: support component index, or a fresh label per other vertex
    let mut label = vec![usize::MAX; g.vertex_count()];
    for (i, c) in comps.components.iter().enumerate() {
        for &v in &c.vertices {
            label[v] = i;
        }
    }
    let mut next = comps.components.len();
    for l in label.iter_mut().filter(|l| **l == usize::MAX) {
        *l = next;
        next += 1;
    }
    let mut forest = Vec::new();
    let candidates = g
        .edge_ids()
        .map(|e| {
            let edge = g.edge(e);
            if support.contains(&e) {
                vec![1, -1]
            } else if !ambient.contains(&e) || label[edge.u] == label[edge.v] {
                vec![0]
            } else {
                forest.push((e, label[edge.u], label[edge.v]));
                vec![0, 2, -2]
            }
        })
        .collect();
    let search = ValueSearch::new(g, tau, candidates)
        .with_forest(next, &forest)
        .with_budget(BUDGET);
    match search.solve() {
        SearchOutcome::Found(values) => {
            checked(g, IntFlow::with_bound(tau.clone(), values, 3), "Z2 lift")
        }
        other => Err(FlowError::SearchExhausted(format!("Z2 lift: {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::z3_flow_phi2;
    use crate::graph::{verify_flow, Sign::*};

    #[test]
    fn z3_lift_examples() {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = SignedGraph::from_edges(pairs.iter().map(|&(u, v)| (u, v, Positive)));
        let tau = Orientation::default_for(&g);
        let (f1, _) = z3_flow_phi2(&g, &tau, &EdgeSet::from([0, 3, 5, 2])).unwrap();
        let f2 = lift_z3_to_4flow(&g, &f1).unwrap();
        assert!(verify_flow(&g, &f2, false).is_valid());
        for e in g.edge_ids() {
            assert_eq!(f2.value(e).rem_euclid(3), f1.value(e));
            if f1.value(e) != 0 {
                assert!((1..=2).contains(&f2.value(e).abs()));
            }
        }
        let zero = ModFlow::new(3, tau, vec![0; 6]).unwrap();
        assert!(lift_z3_to_4flow(&g, &zero).unwrap().values().iter().all(|&v| v == 0));

        let path = SignedGraph::from_edges([(0, 1, Positive)]);
        let z = ModFlow::new(3, Orientation::default_for(&path), vec![0]).unwrap();
        assert_eq!(lift_z3_to_4flow(&path, &z), Err(FlowError::HasBridge(0)));
    }

    #[test]
    fn z2_lift_barbell_and_even() {
        let lb = SignedGraph::from_edges([(0, 0, Negative), (1, 1, Negative), (0, 1, Positive)]);
        let tau = Orientation::default_for(&lb);
        let f = lift_z2_to_3flow(&lb, &tau, &lb.all_edges(), &EdgeSet::from([0, 1])).unwrap();
        assert!(verify_flow(&lb, &f, true).is_valid());
        assert_eq!(f.value(2).abs(), 2);

        let sq = SignedGraph::from_edges([(0, 1, Negative), (1, 2, Negative), (2, 3, Positive), (3, 0, Positive), (0, 2, Positive)]);
        let tau = Orientation::default_for(&sq);
        let f = lift_z2_to_3flow(&sq, &tau, &sq.all_edges(), &EdgeSet::from([0, 1, 2, 3])).unwrap();
        assert_eq!(f.value(4), 0);
        assert!(lift_z2_to_3flow(&sq, &tau, &sq.all_edges(), &EdgeSet::from([0])).is_err());
    }
}
