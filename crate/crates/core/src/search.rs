//! Backtracking over per-edge candidate values with boundary interval pruning.
//!
//! Used by the lifting constructions, where existence is known and the search
//! only has to find one assignment.

use crate::graph::{EdgeId, Orientation, SignedGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<i32>),
    Infeasible,
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn found(self) -> Option<Vec<i32>> {
        match self {
            SearchOutcome::Found(v) => Some(v),
            _ => None,
        }
    }
}

/// Assignment problem: each edge takes a value from its candidate list (tried
/// in order) so that every boundary vanishes.
pub struct ValueSearch<'a> {
    g: &'a SignedGraph,
    candidates: Vec<Vec<i32>>,
    /// (vertex, coefficient) pairs per edge, loops merged
    incidences: Vec<Vec<(VertexId, i32)>>,
    /// edges whose nonzero values must form a forest on these node labels
    forest: Vec<Option<(usize, usize)>>,
    forest_nodes: usize,
    budget: u64,
}

impl<'a> ValueSearch<'a> {
    pub fn new(g: &'a SignedGraph, tau: &Orientation, candidates: Vec<Vec<i32>>) -> Self {
        assert_eq!(candidates.len(), g.edge_count());
        let incidences = g
            .edge_ids()
            .map(|e| {
                let edge = g.edge(e);
                if edge.is_loop() {
                    let c = tau.coefficient(g, e, edge.u);
                    if c == 0 {
                        vec![]
                    } else {
                        vec![(edge.u, c)]
                    }
                } else {
                    vec![(edge.u, tau.pair(e)[0] as i32), (edge.v, tau.pair(e)[1] as i32)]
                }
            })
            .collect();
        ValueSearch {
            g,
            candidates,
            incidences,
            forest: vec![None; g.edge_count()],
            forest_nodes: 0,
            budget: u64::MAX,
        }
    }

    /// Nonzero values on the listed edges must not close a cycle, where each
    /// listed edge joins the two given node labels (labels `< nodes`).
    pub fn with_forest(mut self, nodes: usize, edges: &[(EdgeId, usize, usize)]) -> Self {
        self.forest_nodes = nodes;
        for &(e, a, b) in edges {
            self.forest[e] = Some((a, b));
        }
        self
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.budget = nodes;
        self
    }

    pub fn solve(&self) -> SearchOutcome {
        let n = self.g.vertex_count();
        let m = self.g.edge_count();
        if self.candidates.iter().any(|c| c.is_empty()) {
            return SearchOutcome::Infeasible;
        }
        let order = self.edge_order();
        let mut rest_min = vec![0i64; n];
        let mut rest_max = vec![0i64; n];
        for e in 0..m {
            for &(v, c) in &self.incidences[e] {
                let (lo, hi) = self.range(e, c);
                rest_min[v] += lo;
                rest_max[v] += hi;
            }
        }
        let mut state = State {
            values: vec![0; m],
            partial: vec![0; n],
            rest_min,
            rest_max,
            dsu: RollbackDsu::new(self.forest_nodes),
            nodes: 0,
        };
        // infeasible before any assignment
        if (0..n).any(|v| state.rest_min[v] > 0 || state.rest_max[v] < 0) {
            return SearchOutcome::Infeasible;
        }
        match self.rec(&order, 0, &mut state) {
            Some(true) => SearchOutcome::Found(state.values),
            Some(false) => SearchOutcome::Infeasible,
            None => SearchOutcome::BudgetExceeded,
        }
    }

    fn range(&self, e: EdgeId, c: i32) -> (i64, i64) {
        let vals = self.candidates[e].iter().map(|&x| (c * x) as i64);
        let lo = vals.clone().min().unwrap_or(0);
        let hi = vals.max().unwrap_or(0);
        (lo, hi)
    }

    /// Repeatedly close the vertex with fewest open incident edges.
    fn edge_order(&self) -> Vec<EdgeId> {
        let n = self.g.vertex_count();
        let m = self.g.edge_count();
        let mut open = vec![0usize; n];
        let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        for e in 0..m {
            let edge = self.g.edge(e);
            at[edge.u].push(e);
            open[edge.u] += 1;
            if !edge.is_loop() {
                at[edge.v].push(e);
                open[edge.v] += 1;
            }
        }
        let mut placed = vec![false; m];
        let mut order = Vec::with_capacity(m);
        let mut touched = vec![false; n];
        while order.len() < m {
            // prefer vertices already touched, then fewest open edges
            let v = (0..n)
                .filter(|&v| open[v] > 0)
                .min_by_key(|&v| (!touched[v], open[v], v))
                .expect("open edge exists");
            let mut es: Vec<EdgeId> = at[v].iter().copied().filter(|&e| !placed[e]).collect();
            es.sort_by_key(|&e| (self.candidates[e].len(), e));
            es.dedup();
            for e in es {
                placed[e] = true;
                order.push(e);
                let edge = self.g.edge(e);
                open[edge.u] -= 1;
                touched[edge.u] = true;
                if !edge.is_loop() {
                    open[edge.v] -= 1;
                    touched[edge.v] = true;
                }
            }
        }
        order
    }

    /// `Some(true)` solved, `Some(false)` infeasible subtree, `None` budget hit.
    fn rec(&self, order: &[EdgeId], i: usize, s: &mut State) -> Option<bool> {
        if i == order.len() {
            return Some(s.partial.iter().all(|&p| p == 0));
        }
        s.nodes += 1;
        if s.nodes > self.budget {
            return None;
        }
        let e = order[i];
        let inc = &self.incidences[e];
        let ranges: Vec<(i64, i64)> = inc.iter().map(|&(_, c)| self.range(e, c)).collect();
        for (&(v, _), &(lo, hi)) in inc.iter().zip(&ranges) {
            s.rest_min[v] -= lo;
            s.rest_max[v] -= hi;
        }
        let mut result = Some(false);
        for &x in &self.candidates[e] {
            let mut linked = false;
            if x != 0 {
                if let Some((a, b)) = self.forest[e] {
                    if !s.dsu.union(a, b) {
                        continue;
                    }
                    linked = true;
                }
            }
            let mut ok = true;
            for &(v, c) in inc {
                s.partial[v] += (c * x) as i64;
            }
            for &(v, _) in inc {
                if s.partial[v] + s.rest_min[v] > 0 || s.partial[v] + s.rest_max[v] < 0 {
                    ok = false;
                }
            }
            if ok {
                s.values[e] = x;
                match self.rec(order, i + 1, s) {
                    Some(true) => return Some(true),
                    None => result = None,
                    Some(false) => {}
                }
                s.values[e] = 0;
            }
            for &(v, c) in inc {
                s.partial[v] -= (c * x) as i64;
            }
            if linked {
                s.dsu.rollback();
            }
            if result.is_none() {
                break;
            }
        }
        for (&(v, _), &(lo, hi)) in inc.iter().zip(&ranges) {
            s.rest_min[v] += lo;
            s.rest_max[v] += hi;
        }
        result
    }
}

struct State {
    values: Vec<i32>,
    partial: Vec<i64>,
    rest_min: Vec<i64>,
    rest_max: Vec<i64>,
    dsu: RollbackDsu,
    nodes: u64,
}

/// Union-find without path compression so unions can be undone in LIFO order.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// False (and no change) when `a` and `b` are already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push(b);
        true
    }

    fn rollback(&mut self) {
        let b = self.history.pop().expect("union to undo");
        let a = self.parent[b];
        self.size[a] -= self.size[b];
        self.parent[b] = b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_flow, IntFlow, Sign::*};

    #[test]
    fn finds_barbell_three_flow() {
        let g = SignedGraph::from_edges([(0, 0, Negative), (1, 1, Negative), (0, 1, Positive)]);
        let tau = Orientation::default_for(&g);
        let c = vec![vec![1, -1], vec![1, -1], vec![2, -2]];
        let v = ValueSearch::new(&g, &tau, c).solve().found().unwrap();
        assert!(verify_flow(&g, &IntFlow::with_bound(tau, v, 3), true).is_valid());
    }

    #[test]
    fn reports_infeasible() {
        let g = SignedGraph::from_edges([(0, 1, Positive), (0, 1, Negative)]);
        let tau = Orientation::default_for(&g);
        let c = vec![vec![1, -1, 2, -2], vec![1, -1, 2, -2]];
        assert_eq!(ValueSearch::new(&g, &tau, c).solve(), SearchOutcome::Infeasible);
    }

    #[test]
    fn forest_rule_blocks_cycles() {
        // triangle; requiring all three nonzero while acyclic is impossible
        let g = SignedGraph::from_edges([(0, 1, Positive), (1, 2, Positive), (2, 0, Positive)]);
        let tau = Orientation::default_for(&g);
        let c = vec![vec![2, -2]; 3];
        let s = ValueSearch::new(&g, &tau, c.clone());
        assert!(matches!(s.solve(), SearchOutcome::Found(_)));
        let s = ValueSearch::new(&g, &tau, c).with_forest(3, &[(0, 0, 1), (1, 1, 2), (2, 2, 0)]);
        assert_eq!(s.solve(), SearchOutcome::Infeasible);
    }

    #[test]
    fn budget_is_respected() {
        let g = SignedGraph::from_edges([(0, 1, Positive), (0, 1, Negative)]);
        let tau = Orientation::default_for(&g);
        let c = vec![vec![1, -1, 2, -2], vec![1, -1, 2, -2]];
        assert_eq!(
            ValueSearch::new(&g, &tau, c).with_budget(1).solve(),
            SearchOutcome::BudgetExceeded
        );
    }
}
