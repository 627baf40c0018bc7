//! GraphFile and FlowFile text formats, and DOT export.
//!
//! ```text
//! sg <n> <m>          flow <k>
//! e <u> <v> <+|->     f <edge> <value>
//! ```
//!
//! Flows are read and written under the default orientation.

use std::fmt::Write as _;

use nzflow::{IntFlow, Orientation, Sign, SignedGraph};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-blank lines with comments removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = l.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number(line: usize, word: &str, what: &str) -> Result<usize, ParseError> {
    word.parse().or_else(|_| err(line, format!("bad {what} `{word}`")))
}

pub fn parse_graph(text: &str) -> Result<SignedGraph, ParseError> {
    let mut it = lines(text);
    let Some((hl, header)) = it.next() else {
        return err(1, "missing `sg <n> <m>` header");
    };
    if header.len() != 3 || header[0] != "sg" {
        return err(hl, "expected `sg <n> <m>`");
    }
    let n = number(hl, header[1], "vertex count")?;
    let m = number(hl, header[2], "edge count")?;
    let mut g = SignedGraph::new(n);
    let mut last = hl;
    for (ln, words) in it {
        last = ln;
        if words.len() != 4 || words[0] != "e" {
            return err(ln, "expected `e <u> <v> <+|->`");
        }
        let u = number(ln, words[1], "vertex")?;
        let v = number(ln, words[2], "vertex")?;
        let sign = match words[3] {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            s => return err(ln, format!("sign must be + or -, got `{s}`")),
        };
        if u >= n || v >= n {
            return err(ln, format!("vertex {} out of range 0..{n}", u.max(v)));
        }
        if g.edge_count() == m {
            return err(ln, format!("more than {m} edges"));
        }
        g.add_edge(u, v, sign).expect("range checked");
    }
    if g.edge_count() != m {
        return err(last, format!("expected {m} edges, found {}", g.edge_count()));
    }
    Ok(g)
}

pub fn emit_graph(g: &SignedGraph) -> String {
    let mut s = format!("sg {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        writeln!(s, "e {} {} {}", e.u, e.v, e.sign).expect("string write");
    }
    s
}

/// Reads a flow for `g`; every edge must appear exactly once.
pub fn parse_flow(text: &str, g: &SignedGraph) -> Result<IntFlow, ParseError> {
    let mut it = lines(text);
    let Some((hl, header)) = it.next() else {
        return err(1, "missing `flow <k>` header");
    };
    if header.len() != 2 || header[0] != "flow" {
        return err(hl, "expected `flow <k>`");
    }
    let k: i32 = header[1].parse().or_else(|_| err(hl, format!("bad bound `{}`", header[1])))?;
    let mut values: Vec<Option<i32>> = vec![None; g.edge_count()];
    let mut last = hl;
    for (ln, words) in it {
        last = ln;
        if words.len() != 3 || words[0] != "f" {
            return err(ln, "expected `f <edge> <value>`");
        }
        let e = number(ln, words[1], "edge index")?;
        let x: i32 = words[2].parse().or_else(|_| err(ln, format!("bad value `{}`", words[2])))?;
        match values.get_mut(e) {
            None => return err(ln, format!("edge {e} out of range 0..{}", g.edge_count())),
            Some(Some(_)) => return err(ln, format!("edge {e} listed twice")),
            Some(slot) => *slot = Some(x),
        }
    }
    if let Some(e) = values.iter().position(Option::is_none) {
        return err(last, format!("edge {e} has no value"));
    }
    let values = values.into_iter().map(|v| v.expect("checked")).collect();
    Ok(IntFlow::with_bound(Orientation::default_for(g), values, k))
}

pub fn emit_flow(flow: &IntFlow) -> String {
    let mut s = format!("flow {}\n", flow.bound());
    for (e, v) in flow.values().iter().enumerate() {
        writeln!(s, "f {e} {v}").expect("string write");
    }
    s
}

/// DOT rendering; negative edges are dashed and labelled with their id.
pub fn to_dot(g: &SignedGraph) -> String {
    let mut s = String::from("graph signed {\n");
    for v in g.vertices() {
        writeln!(s, "  {v};").expect("string write");
    }
    for (i, e) in g.edges().iter().enumerate() {
        let style = if e.sign == Sign::Negative { ", style=dashed" } else { "" };
        writeln!(s, "  {} -- {} [label=\"{i}\"{style}];", e.u, e.v).expect("string write");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = "# digon\nsg 2 3\ne 0 1 +\ne 1 0 -   # reversed\n\ne 1 1 -\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge(1).u, 1);
        assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph_errors_name_lines() {
        assert_eq!(parse_graph("sg 2 1\ne 0 2 +\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("sg 2 1\ne 0 1 x\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("sg 2 2\ne 0 1 +\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("\n\nsg 2\n").unwrap_err().line, 3);
    }

    #[test]
    fn flow_round_trip_and_errors() {
        let g = parse_graph("sg 2 2\ne 0 1 +\ne 0 1 +\n").unwrap();
        let f = parse_flow("flow 2\nf 1 1\nf 0 -1\n", &g).unwrap();
        assert_eq!(f.values(), &[-1, 1]);
        assert_eq!(parse_flow(&emit_flow(&f), &g).unwrap(), f);
        assert_eq!(parse_flow("flow 2\nf 0 1\nf 0 1\n", &g).unwrap_err().line, 3);
        assert!(parse_flow("flow 2\nf 0 1\n", &g).is_err());
    }

    #[test]
    fn dot_dashes_negative_edges() {
        let g = parse_graph("sg 2 2\ne 0 1 +\ne 0 1 -\n").unwrap();
        let d = to_dot(&g);
        assert_eq!(d.matches("dashed").count(), 1);
        assert!(d.contains("0 -- 1 [label=\"1\", style=dashed]"));
    }
}
