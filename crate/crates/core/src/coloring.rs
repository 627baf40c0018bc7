//! Proper 3-edge-colorings of cubic graphs.

use crate::error::{FlowError, Result};
use crate::graph::{EdgeId, EdgeSet, SignedGraph};
use crate::walk::Circuit;

/// Partition of the edges into three perfect matchings, `classes[0..3]` = R, B, Y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    pub classes: [EdgeSet; 3],
}

impl EdgeColoring {
    pub fn red(&self) -> &EdgeSet {
        &self.classes[0]
    }

    pub fn blue(&self) -> &EdgeSet {
        &self.classes[1]
    }

    pub fn yellow(&self) -> &EdgeSet {
        &self.classes[2]
    }

    pub fn union(&self, a: usize, b: usize) -> EdgeSet {
        self.classes[a].union(&self.classes[b]).copied().collect()
    }

    pub fn color_of(&self, e: EdgeId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&e))
    }

    /// No two edges sharing a vertex share a class, and every edge is colored.
    pub fn is_proper(&self, g: &SignedGraph) -> bool {
        let total: usize = self.classes.iter().map(|c| c.len()).sum();
        if total != g.edge_count() || g.edge_ids().any(|e| self.color_of(e).is_none()) {
            return false;
        }
        self.classes.iter().all(|class| {
            let mut seen = vec![false; g.vertex_count()];
            class.iter().all(|&e| {
                let edge = g.edge(e);
                if edge.is_loop() || seen[edge.u] || seen[edge.v] {
                    return false;
                }
                seen[edge.u] = true;
                seen[edge.v] = true;
                true
            })
        })
    }

    /// Negative-edge count of each class modulo 2.
    pub fn parities(&self, g: &SignedGraph) -> [usize; 3] {
        let p = |c: &EdgeSet| g.negative_count(c) % 2;
        [p(&self.classes[0]), p(&self.classes[1]), p(&self.classes[2])]
    }
}

fn check_cubic(g: &SignedGraph) -> Result<()> {
    if let Some(e) = g.edge_ids().find(|&e| g.edge(e).is_loop()) {
        return Err(FlowError::HasLoop(e));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) != 3) {
        return Err(FlowError::NotCubic(v, g.degree(v)));
    }
    Ok(())
}

/// Backtracking 3-edge-coloring, most constrained edge first.
pub fn three_edge_color(g: &SignedGraph) -> Result<EdgeColoring> {
    check_cubic(g)?;
    let m = g.edge_count();
    let mut color: Vec<Option<usize>> = vec![None; m];
    // used[v] is a bitmask of colors present at v
    let mut used = vec![0u8; g.vertex_count()];
    if !color_rec(g, &mut color, &mut used, 0) {
        return Err(FlowError::NotColorable);
    }
    let mut classes: [EdgeSet; 3] = Default::default();
    for (e, c) in color.iter().enumerate() {
        classes[c.expect("all colored")].insert(e);
    }
    Ok(EdgeColoring { classes })
}

fn color_rec(g: &SignedGraph, color: &mut [Option<usize>], used: &mut [u8], done: usize) -> bool {
    if done == color.len() {
        return true;
    }
    let mut best: Option<(EdgeId, u8, u32)> = None;
    for e in g.edge_ids() {
        if color[e].is_some() {
            continue;
        }
        let edge = g.edge(e);
        let free = !(used[edge.u] | used[edge.v]) & 0b111;
        let options = free.count_ones();
        if best.is_none_or(|(_, _, o)| options < o) {
            best = Some((e, free, options));
            if options <= 1 {
                break;
            }
        }
    }
    let (e, free, _) = best.expect("an uncolored edge");
    let edge = *g.edge(e);
    for c in 0..3 {
        if free & (1 << c) == 0 {
            continue;
        }
        color[e] = Some(c);
        used[edge.u] |= 1 << c;
        used[edge.v] |= 1 << c;
        if color_rec(g, color, used, done + 1) {
            return true;
        }
        used[edge.u] &= !(1 << c);
        used[edge.v] &= !(1 << c);
        color[e] = None;
    }
    false
}

/// Relabels the classes so R and B have equal negative-edge parity, taking the
/// first such permutation in lexicographic order.
pub fn order_classes(coloring: &EdgeColoring, g: &SignedGraph) -> EdgeColoring {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let p = coloring.parities(g);
    let perm = PERMS
        .iter()
        .find(|perm| p[perm[0]] == p[perm[1]])
        .expect("two of three parities agree");
    EdgeColoring {
        classes: perm.map(|i| coloring.classes[i].clone()),
    }
}

/// Circuits of the 2-factor formed by two color classes, ordered by smallest vertex.
pub fn two_factor(g: &SignedGraph, class1: &EdgeSet, class2: &EdgeSet) -> Vec<Circuit> {
    let union: EdgeSet = class1.union(class2).copied().collect();
    let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    for &e in &union {
        at[g.edge(e).u].push(e);
        at[g.edge(e).v].push(e);
    }
    let mut used = vec![false; g.edge_count()];
    let mut out = Vec::new();
    for start in g.vertices() {
        let Some(&first) = at[start].iter().find(|&&e| !used[e]) else {
            continue;
        };
        let mut vertices = vec![start];
        let mut edges = vec![first];
        used[first] = true;
        let mut v = g.edge(first).other(start);
        while v != start {
            vertices.push(v);
            let next = *at[v]
                .iter()
                .find(|&&e| !used[e])
                .expect("2-factor continues");
            used[next] = true;
            edges.push(next);
            v = g.edge(next).other(v);
        }
        out.push(Circuit::new(vertices, edges));
    }
    out
}
