use std::collections::BTreeSet;

use nzflow::analysis::{is_balanced, is_flow_admissible};
use nzflow::oracle::{canonical_signature, exists_k_flow};
use nzflow::{boundaries, combine_flows, switch, verify_flow, IntFlow, Orientation, Sign, SignedGraph};
use proptest::prelude::*;

/// Connected signed multigraph: a tree on `n` vertices plus extra edges.
fn signed_graph() -> impl Strategy<Value = SignedGraph> {
    (1usize..=6).prop_flat_map(|n| {
        let tree = proptest::collection::vec((any::<prop::sample::Index>(), any::<bool>()), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, any::<bool>()), 0..=5);
        (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
            let sign = |neg: bool| if neg { Sign::Negative } else { Sign::Positive };
            let mut e: Vec<(usize, usize, Sign)> =
                tree.iter().enumerate().map(|(i, (p, neg))| (p.index(i + 1), i + 1, sign(*neg))).collect();
            e.extend(extra.into_iter().map(|(u, v, neg)| (u, v, sign(neg))));
            SignedGraph::with_vertices(n, e).unwrap()
        })
    })
}

fn with_subset(g: SignedGraph) -> impl Strategy<Value = (SignedGraph, BTreeSet<usize>)> {
    let n = g.vertex_count();
    (Just(g), proptest::collection::btree_set(0..n, 0..=n))
}

proptest! {
    #[test]
    fn switching_twice_is_identity((g, set) in signed_graph().prop_flat_map(with_subset)) {
        let tau = Orientation::default_for(&g);
        let once = switch(&g, &tau, None, &set);
        let twice = switch(&once.graph, &once.orientation, None, &set);
        prop_assert_eq!(twice.graph, g);
        prop_assert_eq!(twice.orientation, tau);
    }

    #[test]
    fn switching_keeps_orientation_consistent((g, set) in signed_graph().prop_flat_map(with_subset)) {
        let s = switch(&g, &Orientation::default_for(&g), None, &set);
        prop_assert!(s.orientation.is_valid_for(&s.graph));
    }

    #[test]
    fn switching_negates_boundaries_on_the_set(
        (g, set) in signed_graph().prop_flat_map(with_subset),
        seed in proptest::collection::vec(-4i32..=4, 11),
    ) {
        let tau = Orientation::default_for(&g);
        let values: Vec<i32> = g.edge_ids().map(|e| seed[e]).collect();
        let f = IntFlow::new(tau.clone(), values.clone());
        let s = switch(&g, &tau, Some(&f), &set);
        let before = boundaries(&g, &tau, &values);
        let after = boundaries(&s.graph, &s.orientation, &values);
        for v in g.vertices() {
            let expect = if set.contains(&v) { -before[v] } else { before[v] };
            prop_assert_eq!(after[v], expect);
        }
    }

    #[test]
    fn switching_class_invariants((g, set) in signed_graph().prop_flat_map(with_subset)) {
        let s = switch(&g, &Orientation::default_for(&g), None, &set);
        prop_assert_eq!(is_balanced(&g), is_balanced(&s.graph));
        prop_assert_eq!(is_flow_admissible(&g).admissible, is_flow_admissible(&s.graph).admissible);
        prop_assert_eq!(canonical_signature(&g), canonical_signature(&s.graph));
    }

    #[test]
    fn reversing_an_edge_keeps_the_flow(g in signed_graph(), pick in any::<prop::sample::Index>()) {
        if let (true, Some(f)) = (g.edge_count() > 0, exists_k_flow(&g, 6)) {
            let e = pick.index(g.edge_count());
            let mut pairs: Vec<[i8; 2]> = g.edge_ids().map(|x| f.orientation().pair(x)).collect();
            pairs[e] = [-pairs[e][0], -pairs[e][1]];
            let mut values = f.values().to_vec();
            values[e] = -values[e];
            let reversed = IntFlow::new(Orientation::from_pairs(pairs), values);
            prop_assert!(verify_flow(&g, &reversed, true).is_valid());
        }
    }

    #[test]
    fn combinations_of_flows_are_flows(g in signed_graph(), a in -3i32..=3, b in -3i32..=3) {
        if let Some(f) = exists_k_flow(&g, 4) {
            let h = f.negated();
            let c = combine_flows(&[(a, &f), (b, &h)]).unwrap();
            prop_assert!(verify_flow(&g, &c, false).is_valid());
            prop_assert!(c.values().iter().zip(f.values()).all(|(x, y)| *x == (a - b) * y));
        }
    }

    #[test]
    fn oracle_flows_verify(g in signed_graph(), k in 2i32..=6) {
        if let Some(f) = exists_k_flow(&g, k) {
            prop_assert!(f.max_abs() < k);
            prop_assert!(verify_flow(&g, &f, true).is_valid());
        }
    }
}
