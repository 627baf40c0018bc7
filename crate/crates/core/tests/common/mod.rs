//! Test-side generators and independent recomputations. Nothing here calls
//! the construction code it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use nzflow::{Sign, SignedGraph};
use rand::Rng;

/// Multigraph with loops as a sorted list of vertex pairs `(u, v)`, `u <= v`.
type Pairs = Vec<(usize, usize)>;

fn canonical(n: usize, pairs: &Pairs) -> Pairs {
    // colour refinement, then try every order consistent with the cells
    let mut mult = vec![vec![0u32; n]; n];
    for &(u, v) in pairs {
        mult[u][v] += 1;
        if u != v {
            mult[v][u] += 1;
        }
    }
    let mut colour: Vec<usize> = (0..n)
        .map(|v| (mult[v].iter().sum::<u32>() + mult[v][v]) as usize * 64 + mult[v][v] as usize)
        .collect();
    loop {
        let sig: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u32)> =
                    (0..n).filter(|&w| w != v && mult[v][w] > 0).map(|w| (colour[w], mult[v][w])).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let distinct: BTreeSet<_> = sig.iter().cloned().collect();
        let index: BTreeMap<_, usize> = distinct.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        let next: Vec<usize> = sig.iter().map(|s| index[s]).collect();
        let before: BTreeSet<usize> = colour.iter().copied().collect();
        let after: BTreeSet<usize> = next.iter().copied().collect();
        colour = next;
        if after.len() == before.len() {
            break;
        }
    }
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colour.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let mut best: Option<Pairs> = None;
    let mut order = Vec::with_capacity(n);
    permute(&cells, 0, &mut order, &mut vec![false; n], &mut |order| {
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut p: Pairs = pairs
            .iter()
            .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
            .collect();
        p.sort_unstable();
        if best.as_ref().is_none_or(|b| p < *b) {
            best = Some(p);
        }
    });
    best.expect("at least one order")
}

fn permute(
    cells: &[Vec<usize>],
    ci: usize,
    order: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if ci == cells.len() {
        visit(order);
        return;
    }
    let cell = &cells[ci];
    let placed = order.len();
    let cell_start = cells[..ci].iter().map(Vec::len).sum::<usize>();
    if placed == cell_start + cell.len() {
        permute(cells, ci + 1, order, used, visit);
        return;
    }
    for &v in cell {
        if !used[v] {
            used[v] = true;
            order.push(v);
            permute(cells, ci, order, used, visit);
            order.pop();
            used[v] = false;
        }
    }
}

fn to_graph(n: usize, pairs: &Pairs) -> SignedGraph {
    SignedGraph::with_vertices(n, pairs.iter().map(|&(u, v)| (u, v, Sign::Positive))).unwrap()
}

/// All connected multigraphs with loops, up to isomorphism, with
/// `1..=max_edges` edges, grouped by edge count. Every connected graph arises
/// from a smaller one by adding a loop, an edge, or a pendant edge.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Vec<SignedGraph>> {
    let mut levels: Vec<BTreeSet<(usize, Pairs)>> = Vec::new();
    let mut current: BTreeSet<(usize, Pairs)> = BTreeSet::new();
    current.insert((1, vec![(0, 0)]));
    current.insert((2, vec![(0, 1)]));
    levels.push(current);
    for _ in 1..max_edges {
        let mut next = BTreeSet::new();
        for (n, pairs) in levels.last().unwrap() {
            let n = *n;
            for u in 0..n {
                for v in u..n {
                    let mut p = pairs.clone();
                    p.push((u, v));
                    next.insert((n, canonical(n, &p)));
                }
                let mut p = pairs.clone();
                p.push((u, n));
                next.insert((n + 1, canonical(n + 1, &p)));
            }
        }
        levels.push(next);
    }
    levels
        .into_iter()
        .map(|l| l.iter().map(|(n, p)| to_graph(*n, p)).collect())
        .collect()
}

pub fn is_eulerian(g: &SignedGraph) -> bool {
    g.vertices().all(|v| g.degree(v).is_multiple_of(2))
}

/// Random connected signed multigraph: a random spanning tree plus extra
/// edges (loops and parallels allowed).
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: usize, neg_prob: f64) -> SignedGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    SignedGraph::with_vertices(
        n,
        edges.into_iter().map(|(u, v)| {
            let s = if rng.gen_bool(neg_prob) { Sign::Negative } else { Sign::Positive };
            (u, v, s)
        }),
    )
    .unwrap()
}

/// Circuits of the 2-factor `a ∪ b` of a cubic graph, traced independently,
/// as (edge list, negative count).
pub fn factor_circuits(g: &SignedGraph, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Vec<(Vec<usize>, usize)> {
    let union: Vec<usize> = a.union(b).copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in &union {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut i = 0;
        while i < comp.len() {
            let e = g.edge(comp[i]);
            for &f in &union {
                let o = g.edge(f);
                let touches = [o.u, o.v].iter().any(|x| *x == e.u || *x == e.v);
                if touches && seen.insert(f) {
                    comp.push(f);
                }
            }
            i += 1;
        }
        let neg = comp.iter().filter(|&&e| g.sign(e) == Sign::Negative).count();
        out.push((comp, neg));
    }
    out
}

/// Exceptional condition recomputed from the colour classes alone. The
/// classes are relabelled first so R and B share negative parity.
pub fn exceptional_from_classes(g: &SignedGraph, classes: &[BTreeSet<usize>; 3]) -> bool {
    let parity = |c: &BTreeSet<usize>| c.iter().filter(|&&e| g.sign(e) == Sign::Negative).count() % 2;
    let (r, b, y) = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
        .into_iter()
        .find(|&(i, j, _)| parity(&classes[i]) == parity(&classes[j]))
        .unwrap();
    let odd = |x: usize, z: usize| {
        factor_circuits(g, &classes[x], &classes[z]).iter().filter(|(_, n)| n % 2 == 1).count()
    };
    let (rb, ry, by) = (odd(r, b), odd(r, y), odd(b, y));
    rb == 0 && ry % 2 == 1 && ry >= 3 && by % 2 == 1 && by >= 3
}

/// First proper 3-edge-colouring found by plain backtracking, as three edge classes.
pub fn brute_coloring(g: &SignedGraph) -> Option<[BTreeSet<usize>; 3]> {
    fn go(g: &SignedGraph, e: usize, used: &mut [u8], color: &mut [usize]) -> bool {
        if e == g.edge_count() {
            return true;
        }
        let edge = g.edge(e);
        if edge.is_loop() {
            return false;
        }
        for c in 0..3 {
            let bit = 1u8 << c;
            if used[edge.u] & bit == 0 && used[edge.v] & bit == 0 {
                used[edge.u] |= bit;
                used[edge.v] |= bit;
                color[e] = c;
                if go(g, e + 1, used, color) {
                    return true;
                }
                used[edge.u] &= !bit;
                used[edge.v] &= !bit;
            }
        }
        false
    }
    let mut used = vec![0u8; g.vertex_count()];
    let mut color = vec![0; g.edge_count()];
    if !go(g, 0, &mut used, &mut color) {
        return None;
    }
    let mut classes: [BTreeSet<usize>; 3] = Default::default();
    for (e, &c) in color.iter().enumerate() {
        classes[c].insert(e);
    }
    Some(classes)
}

/// Graph whose given support is a disjoint union of circuits (`odd` of them
/// unbalanced, some of those negative loops, plus `even` balanced ones), tied
/// together by a random tree and a few extra edges.
pub fn odd_component_instance<R: Rng>(rng: &mut R, odd: usize, even: usize) -> (SignedGraph, BTreeSet<usize>) {
    let mut g = SignedGraph::new(0);
    let mut support = BTreeSet::new();
    let mut nodes: Vec<Vec<usize>> = Vec::new();
    for i in 0..odd + even {
        let unbalanced = i < odd;
        let len = if unbalanced && rng.gen_bool(0.3) { 1 } else { rng.gen_range(2..=5) };
        let vs: Vec<usize> = (0..len).map(|_| g.add_vertex()).collect();
        let mut signs: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.4)).collect();
        if signs.iter().filter(|&&s| s).count() % 2 != unbalanced as usize {
            signs[0] = !signs[0];
        }
        for j in 0..len {
            let s = if signs[j] { Sign::Negative } else { Sign::Positive };
            support.insert(g.add_edge(vs[j], vs[(j + 1) % len], s).unwrap());
        }
        nodes.push(vs);
    }
    for _ in 0..rng.gen_range(0..3) {
        nodes.push(vec![g.add_vertex()]);
    }
    let pick = |rng: &mut R, vs: &Vec<usize>| vs[rng.gen_range(0..vs.len())];
    for i in 1..nodes.len() {
        let j = rng.gen_range(0..i);
        let (a, b) = (pick(rng, &nodes[i]), pick(rng, &nodes[j]));
        let s = if rng.gen_bool(0.3) { Sign::Negative } else { Sign::Positive };
        g.add_edge(a, b, s).unwrap();
    }
    for _ in 0..rng.gen_range(0..4) {
        let n = g.vertex_count();
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            let s = if rng.gen_bool(0.3) { Sign::Negative } else { Sign::Positive };
            g.add_edge(a, b, s).unwrap();
        }
    }
    (g, support)
}

/// Both odd-component conditions, checked from scratch: support edges valued
/// 1..=3 in magnitude (negative loops 1 or 2), and the nonzero edges outside
/// the support form a forest once each support component is one node.
pub fn odd_conditions_hold(g: &SignedGraph, support: &BTreeSet<usize>, values: &[i32]) -> bool {
    let n = g.vertex_count();
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = root(p, p[x]);
            p[x] = r;
            r
        }
    }
    for &e in support {
        let (a, b) = (root(&mut comp, g.edge(e).u), root(&mut comp, g.edge(e).v));
        comp[a] = b;
    }
    let mut forest: Vec<usize> = (0..n).collect();
    for e in g.edge_ids() {
        let edge = g.edge(e);
        let x = values[e].abs();
        if support.contains(&e) {
            let cap = if edge.is_loop() && edge.sign == Sign::Negative { 2 } else { 3 };
            if x == 0 || x > cap {
                return false;
            }
        } else if x != 0 {
            let a = root(&mut comp, edge.u);
            let b = root(&mut comp, edge.v);
            let (ra, rb) = (root(&mut forest, a), root(&mut forest, b));
            if ra == rb {
                return false;
            }
            forest[ra] = rb;
        }
    }
    true
}
