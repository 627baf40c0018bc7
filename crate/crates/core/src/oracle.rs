//! Exhaustive ground truth: nowhere-zero k-flow existence by backtracking and
//! enumeration of signatures modulo switching.

use std::time::{Duration, Instant};

use crate::graph::{verify_flow, EdgeId, EdgeSet, HalfEdge, IntFlow, Orientation, Sign, SignedGraph};

/// Constraint row: a vertex, or the redundant global row summing all of them.
struct Row {
    /// (position in the search order, coefficient)
    terms: Vec<(usize, i64)>,
}

struct Search {
    k: i32,
    order: Vec<EdgeId>,
    /// rows touched by the edge at each position, with its coefficient
    touches: Vec<Vec<(usize, i64)>>,
    /// rows whose last edge sits at each position
    closes: Vec<Vec<usize>>,
    /// capacity left in each row after each position
    capacity: Vec<Vec<i64>>,
    partial: Vec<i64>,
    values: Vec<i32>,
    nodes: u64,
}

impl Search {
    fn new(g: &SignedGraph, tau: &Orientation, k: i32) -> Search {
        let n = g.vertex_count();
        let global = n;
        // coefficient of each edge in each row
        let mut coef: Vec<Vec<(usize, i64)>> = vec![Vec::new(); g.edge_count()];
        for e in g.edge_ids() {
            let edge = g.edge(e);
            let t0 = tau.get(HalfEdge { edge: e, end: 0 }) as i64;
            let t1 = tau.get(HalfEdge { edge: e, end: 1 }) as i64;
            if edge.is_loop() {
                if t0 + t1 != 0 {
                    coef[e].push((edge.u, t0 + t1));
                }
            } else {
                coef[e].push((edge.u, t0));
                coef[e].push((edge.v, t1));
            }
            if edge.sign == Sign::Negative {
                coef[e].push((global, t0));
            }
        }
        let searched: Vec<EdgeId> = g.edge_ids().filter(|&e| !coef[e].is_empty()).collect();
        // most-saturated-row ordering
        let mut pending = vec![0usize; n + 1];
        for &e in &searched {
            for &(r, _) in &coef[e] {
                pending[r] += 1;
            }
        }
        let mut left: Vec<EdgeId> = searched;
        let mut order = Vec::with_capacity(left.len());
        while !left.is_empty() {
            let (i, _) = left
                .iter()
                .enumerate()
                .min_by_key(|&(_, &e)| {
                    let sat = coef[e].iter().filter(|&&(r, _)| r < n).map(|&(r, _)| pending[r]).min();
                    (sat.unwrap_or(usize::MAX), e)
                })
                .expect("nonempty");
            let e = left.remove(i);
            for &(r, _) in &coef[e] {
                pending[r] -= 1;
            }
            order.push(e);
        }
        let len = order.len();
        let mut rows: Vec<Row> = (0..=n).map(|_| Row { terms: Vec::new() }).collect();
        let mut touches = vec![Vec::new(); len];
        for (p, &e) in order.iter().enumerate() {
            for &(r, c) in &coef[e] {
                rows[r].terms.push((p, c));
                touches[p].push((r, c));
            }
        }
        let mut closes = vec![Vec::new(); len];
        let mut capacity = vec![vec![0i64; n + 1]; len];
        for (r, row) in rows.iter().enumerate() {
            if let Some(&(last, _)) = row.terms.last() {
                closes[last].push(r);
            }
            for (p, cap) in capacity.iter_mut().enumerate() {
                cap[r] = row
                    .terms
                    .iter()
                    .filter(|&&(q, _)| q > p)
                    .map(|&(_, c)| c.abs() * (k as i64 - 1))
                    .sum();
            }
        }
        Search {
            k,
            order,
            touches,
            closes,
            capacity,
            partial: vec![0; n + 1],
            values: vec![0; g.edge_count()],
            nodes: 0,
        }
    }

    fn apply(&mut self, p: usize, x: i32) -> bool {
        for &(r, c) in &self.touches[p] {
            self.partial[r] += c * x as i64;
        }
        self.touches[p]
            .iter()
            .all(|&(r, _)| self.partial[r].abs() <= self.capacity[p][r])
    }

    fn undo(&mut self, p: usize, x: i32) {
        for &(r, c) in &self.touches[p] {
            self.partial[r] -= c * x as i64;
        }
    }

    fn rec(&mut self, p: usize) -> bool {
        if p == self.order.len() {
            return true;
        }
        self.nodes += 1;
        let e = self.order[p];
        let candidates: Vec<i32> = match self.closes[p].first() {
            Some(&r) => {
                let c = self.touches[p].iter().find(|&&(q, _)| q == r).expect("closing row").1;
                let need = -self.partial[r];
                if need % c != 0 {
                    return false;
                }
                let x = need / c;
                if x == 0 || x.abs() >= self.k as i64 {
                    return false;
                }
                vec![x as i32]
            }
            None if p == 0 => (1..self.k).collect(),
            None => (1..self.k).flat_map(|v| [v, -v]).collect(),
        };
        for x in candidates {
            let ok = self.apply(p, x);
            if ok {
                self.values[e] = x;
                if self.rec(p + 1) {
                    return true;
                }
            }
            self.undo(p, x);
        }
        self.values[e] = 0;
        false
    }
}

fn search(g: &SignedGraph, k: i32) -> (Option<IntFlow>, u64) {
    assert!(k >= 2, "k must be at least 2");
    let tau = Orientation::default_for(g);
    let mut s = Search::new(g, &tau, k);
    let found = s.rec(0);
    if !found {
        return (None, s.nodes);
    }
    let mut values = s.values;
    for e in g.edge_ids() {
        if values[e] == 0 {
            // positive loops impose nothing
            values[e] = 1;
        }
    }
    let flow = IntFlow::with_bound(tau, values, k);
    assert!(verify_flow(g, &flow, true).is_valid(), "oracle witness failed verification");
    (Some(flow), s.nodes)
}

/// A nowhere-zero k-flow under the default orientation, if one exists.
pub fn exists_k_flow(g: &SignedGraph, k: i32) -> Option<IntFlow> {
    search(g, k).0
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub minimum: Option<i32>,
    pub witness: Option<IntFlow>,
    /// (k, feasible) for k = 2..=kmax; entries above the minimum follow by monotonicity
    pub table: Vec<(i32, bool)>,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl OracleReport {
    pub fn is_monotone(&self) -> bool {
        self.table.windows(2).all(|w| !w[0].1 || w[1].1)
    }
}

/// Smallest k ≤ `kmax` admitting a nowhere-zero k-flow.
pub fn min_flow_number(g: &SignedGraph, kmax: i32) -> OracleReport {
    assert!(kmax >= 2, "kmax must be at least 2");
    let start = Instant::now();
    let mut nodes = 0;
    let mut table = Vec::new();
    let mut found: Option<(i32, IntFlow)> = None;
    for k in 2..=kmax {
        if found.is_some() {
            table.push((k, true));
            continue;
        }
        let (w, n) = search(g, k);
        nodes += n;
        table.push((k, w.is_some()));
        if let Some(f) = w {
            found = Some((k, f));
        }
    }
    let (minimum, witness) = match found {
        Some((k, f)) => (Some(k), Some(f)),
        None => (None, None),
    };
    OracleReport { minimum, witness, table, nodes, elapsed: start.elapsed() }
}

/// Cut space of `g` over GF(2) in reduced echelon form; bit `m - 1 - e` stands
/// for edge `e`, so lower edge ids are more significant.
fn cut_basis(g: &SignedGraph) -> Vec<u64> {
    let m = g.edge_count();
    assert!(m <= 64, "signature enumeration supports at most 64 edges");
    let bit = |e: EdgeId| 1u64 << (m - 1 - e);
    let mut basis: Vec<u64> = Vec::new();
    for v in g.vertices() {
        let mut row = 0u64;
        for e in g.edge_ids() {
            let edge = g.edge(e);
            if !edge.is_loop() && (edge.u == v || edge.v == v) {
                row ^= bit(e);
            }
        }
        for b in &basis {
            let lead = 1u64 << (63 - b.leading_zeros());
            if row & lead != 0 {
                row ^= b;
            }
        }
        if row != 0 {
            let lead = 1u64 << (63 - row.leading_zeros());
            for b in basis.iter_mut() {
                if *b & lead != 0 {
                    *b ^= row;
                }
            }
            basis.push(row);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

fn signature_bits(g: &SignedGraph) -> u64 {
    let m = g.edge_count();
    g.negative_edges().iter().fold(0, |acc, &e| acc | 1u64 << (m - 1 - e))
}

fn with_bits(g: &SignedGraph, bits: u64) -> SignedGraph {
    let m = g.edge_count();
    let mut out = g.clone();
    for e in g.edge_ids() {
        let neg = bits & (1u64 << (m - 1 - e)) != 0;
        out.set_sign(e, if neg { Sign::Negative } else { Sign::Positive });
    }
    out
}

fn reduce(basis: &[u64], mut bits: u64) -> u64 {
    for b in basis {
        let lead = 1u64 << (63 - b.leading_zeros());
        if bits & lead != 0 {
            bits ^= b;
        }
    }
    bits
}

/// Negative edge set of the canonical member of the switching class of `g`:
/// the lexicographically least signature, earlier edges weighing more.
pub fn canonical_signature(g: &SignedGraph) -> EdgeSet {
    let bits = reduce(&cut_basis(g), signature_bits(g));
    with_bits(g, bits).negative_edges()
}

/// Number of switching classes of signatures on the underlying graph of `g`.
pub fn class_count(g: &SignedGraph) -> u64 {
    1u64 << (g.edge_count() - cut_basis(g).len())
}

/// Streams one canonical representative per switching class for each base
/// graph with at most `nmax` vertices.
pub struct SignatureClasses {
    bases: Vec<SignedGraph>,
    current: usize,
    free: Vec<u64>,
    counter: u64,
}

impl Iterator for SignatureClasses {
    type Item = SignedGraph;

    fn next(&mut self) -> Option<SignedGraph> {
        loop {
            let base = self.bases.get(self.current)?;
            if self.counter < 1u64 << self.free.len() {
                let bits = self
                    .free
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| self.counter & (1 << i) != 0)
                    .fold(0, |acc, (_, &b)| acc | b);
                self.counter += 1;
                return Some(with_bits(base, bits));
            }
            self.current += 1;
            self.counter = 0;
            self.free = self.bases.get(self.current).map(free_bits).unwrap_or_default();
        }
    }
}

fn free_bits(g: &SignedGraph) -> Vec<u64> {
    let m = g.edge_count();
    let pivots = cut_basis(g).iter().fold(0u64, |acc, b| acc | 1u64 << (63 - b.leading_zeros()));
    (0..m)
        .map(|e| 1u64 << (m - 1 - e))
        .filter(|b| pivots & b == 0)
        .collect()
}

pub fn enumerate_signed(bases: Vec<SignedGraph>, nmax: usize) -> SignatureClasses {
    let bases: Vec<SignedGraph> = bases.into_iter().filter(|g| g.vertex_count() <= nmax).collect();
    let free = bases.first().map(free_bits).unwrap_or_default();
    SignatureClasses { bases, current: 0, free, counter: 0 }
}
