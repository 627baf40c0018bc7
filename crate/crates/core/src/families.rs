//! Built-in graph families. All graphs come out all-positive unless the
//! constructor says otherwise; use [`with_negatives`] to sign them.

use crate::error::{FlowError, Result};
use crate::graph::{EdgeId, Sign, SignedGraph, VertexId};

use Sign::{Negative, Positive};

fn positive(pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> SignedGraph {
    SignedGraph::from_edges(pairs.into_iter().map(|(u, v)| (u, v, Positive)))
}

/// Copy of `g` with exactly the edges in `negatives` negative.
pub fn with_negatives(g: &SignedGraph, negatives: &[EdgeId]) -> SignedGraph {
    let mut out = g.clone();
    for e in g.edge_ids() {
        out.set_sign(e, if negatives.contains(&e) { Negative } else { Positive });
    }
    out
}

/// Circuit `0-1-...-(n-1)-0`; `n = 1` is a loop and `n = 2` a digon.
pub fn circuit(n: usize) -> SignedGraph {
    if n == 1 {
        return positive([(0, 0)]);
    }
    positive((0..n).map(|i| (i, (i + 1) % n)))
}

/// Negative loops at 0 and at `path_len`, joined by a positive path.
/// `path_len = 0` gives the short barbell at a single vertex.
pub fn barbell(path_len: usize) -> SignedGraph {
    let mut e = vec![(0, 0, Negative), (path_len, path_len, Negative)];
    e.extend((0..path_len).map(|i| (i, i + 1, Positive)));
    SignedGraph::from_edges(e)
}

/// Two vertices joined by internally disjoint paths with the given edge counts.
pub fn theta(lengths: &[usize]) -> SignedGraph {
    let mut g = SignedGraph::new(2);
    for &len in lengths {
        let mut prev = 0;
        for i in 0..len {
            let next = if i + 1 == len { 1 } else { g.add_vertex() };
            g.add_edge(prev, next, Positive).expect("vertices exist");
            prev = next;
        }
    }
    g
}

pub fn k4() -> SignedGraph {
    positive([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn k33() -> SignedGraph {
    positive((0..3).flat_map(|a| (3..6).map(move |b| (a, b))))
}

/// Circular ladder `C_n × K2`: outer circuit `0..n`, inner `n..2n`, then spokes.
pub fn prism(n: usize) -> SignedGraph {
    let mut e: Vec<(VertexId, VertexId)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    e.extend((0..n).map(|i| (n + i, n + (i + 1) % n)));
    e.extend((0..n).map(|i| (i, n + i)));
    positive(e)
}

/// Hamilton order of [`prism`].
pub fn prism_hamilton(n: usize) -> Vec<VertexId> {
    (0..n).chain((n..2 * n).rev()).collect()
}

pub fn cube() -> SignedGraph {
    let mut e = Vec::new();
    for v in 0..8usize {
        for b in [1, 2, 4] {
            if v & b == 0 {
                e.push((v, v | b));
            }
        }
    }
    positive(e)
}

pub fn petersen() -> SignedGraph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    positive(e)
}

/// Hub 0 and rim `1..=n`: rim edges first, then spokes `0-i`.
pub fn wheel(n: usize) -> SignedGraph {
    let mut e: Vec<(VertexId, VertexId)> = (1..=n).map(|i| (i, i % n + 1)).collect();
    e.extend((1..=n).map(|i| (0, i)));
    positive(e)
}

pub fn wheel_hamilton(n: usize) -> Vec<VertexId> {
    (0..=n).collect()
}

/// Circulant on `0..n` with the given jumps; a jump of `n/2` adds each chord once.
pub fn circulant(n: usize, jumps: &[usize]) -> SignedGraph {
    let mut e = Vec::new();
    for &j in jumps {
        for i in 0..n {
            if 2 * j == n && i >= n / 2 {
                continue;
            }
            e.push((i, (i + j) % n));
        }
    }
    positive(e)
}

/// Vertex 0 with `t` negative loops and `d - 2t` edges to a circuit on
/// `1..=d-2t` (closed by an unbalanced digon when `d - 2t = 2`).
pub fn blow_up_fixture(d: usize, t: usize) -> Result<SignedGraph> {
    if d < 2 * t + 2 || d < 3 {
        return Err(FlowError::Precondition(format!("no fixture for degree {d} with {t} loops")));
    }
    let r = d - 2 * t;
    let mut g = SignedGraph::new(1 + r);
    for _ in 0..t {
        g.add_edge(0, 0, Negative)?;
    }
    for i in 1..=r {
        g.add_edge(0, i, if i == 1 && t == 0 { Negative } else { Positive })?;
    }
    if r == 2 {
        g.add_edge(1, 2, Positive)?;
        g.add_edge(1, 2, Negative)?;
    } else {
        for i in 1..=r {
            // a second negative edge keeps the fixture flow-admissible
            let neg = (t == 1 && i == 1) || (t == 0 && i == 2);
            g.add_edge(i, i % r + 1, if neg { Negative } else { Positive })?;
        }
    }
    Ok(g)
}

/// Family names accepted by [`family`].
pub const FAMILIES: [&str; 11] = [
    "circuit", "barbell", "theta", "k4", "k33", "prism", "cube", "petersen", "wheel", "circulant", "blowup",
];

/// Family member by name; `n` is the size parameter where one applies.
pub fn family(name: &str, n: usize) -> Result<SignedGraph> {
    let need = |min: usize| {
        if n < min {
            Err(FlowError::Precondition(format!("{name} needs n >= {min}")))
        } else {
            Ok(())
        }
    };
    match name {
        "circuit" => need(1).map(|_| circuit(n)),
        "barbell" => Ok(barbell(n)),
        "theta" => need(1).map(|_| theta(&[n, n, n])),
        "k4" => Ok(k4()),
        "k33" => Ok(k33()),
        "prism" => need(3).map(|_| prism(n)),
        "cube" => Ok(cube()),
        "petersen" => Ok(petersen()),
        "wheel" => need(3).map(|_| wheel(n)),
        "circulant" => need(5).map(|_| circulant(n, &[1, 2])),
        "blowup" => blow_up_fixture(n, (n.saturating_sub(3)) / 2),
        _ => Err(FlowError::Precondition(format!(
            "unknown family {name}; expected one of {}",
            FAMILIES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(k33().edge_count(), 9);
        assert!(prism(3).is_cubic() && cube().is_cubic() && petersen().is_cubic());
        assert_eq!(theta(&[1, 2, 3]).edge_count(), 6);
        assert_eq!(circulant(8, &[1, 4]).edge_count(), 12);
        let b = blow_up_fixture(7, 2).unwrap();
        assert_eq!(b.degree(0), 7);
        assert!(b.vertices().skip(1).all(|v| b.degree(v) == 3));
        for t in 0..=2 {
            for d in 4..=7 {
                if let Ok(g) = blow_up_fixture(d, t) {
                    assert_eq!(g.degree(0), d);
                }
            }
        }
    }
}
