//! Line-oriented text format shared by patterns and data graphs.
//!
//! ```text
//! # comment
//! n 3
//! v 0 A
//! v 1 B
//! v 2 B
//! e 0 1
//! e 0 2
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{LabeledDigraph, NodeId, Subgraph};
use crate::simulation::MatchRelation;
use crate::strong::MatchResult;

fn parse_id(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))
}

/// Parses a graph document. Vertex and edge records may appear in any order
/// after the `n` header.
pub fn parse_graph(text: &str) -> Result<LabeledDigraph> {
    let mut count: Option<usize> = None;
    let mut header_line = 0;
    let mut last_line = 0;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut edges: Vec<(usize, NodeId, NodeId)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut toks = content.split_whitespace();
        let kind = toks.next().unwrap_or_default();
        match (kind, count) {
            ("n", None) => {
                let n = parse_id(toks.next(), line, "node count")?;
                count = Some(n);
                header_line = line;
                labels = vec![None; n];
            }
            ("n", Some(_)) => return Err(Error::parse(line, "repeated `n` header")),
            (_, None) => return Err(Error::parse(line, "expected `n <count>` header")),
            ("v", Some(n)) => {
                let id = parse_id(toks.next(), line, "vertex id")?;
                let label = toks
                    .next()
                    .ok_or_else(|| Error::parse(line, "missing vertex label"))?;
                if id >= n {
                    return Err(Error::parse(line, format!("vertex {id} out of range for n = {n}")));
                }
                if labels[id].is_some() {
                    return Err(Error::parse(line, format!("duplicate vertex {id}")));
                }
                labels[id] = Some(label.to_string());
            }
            ("e", Some(_)) => {
                let s = parse_id(toks.next(), line, "edge source")?;
                let t = parse_id(toks.next(), line, "edge target")?;
                edges.push((line, s, t));
            }
            _ => return Err(Error::parse(line, format!("unknown record `{kind}`"))),
        }
        if let Some(extra) = toks.next() {
            return Err(Error::parse(line, format!("trailing token `{extra}`")));
        }
    }

    let Some(n) = count else {
        return Err(Error::parse(last_line.max(1), "missing `n <count>` header"));
    };
    let declared = labels.iter().filter(|l| l.is_some()).count();
    if declared != n {
        return Err(Error::parse(
            header_line,
            format!("n mismatch: header says {n}, {declared} vertices declared"),
        ));
    }
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for &(line, s, t) in &edges {
        for v in [s, t] {
            if v >= n {
                return Err(Error::parse(line, format!("edge references undeclared vertex {v}")));
            }
        }
        if !seen.insert((s, t)) {
            return Err(Error::parse(line, format!("duplicate edge {s} {t}")));
        }
    }
    let labels: Vec<String> = labels.into_iter().flatten().collect();
    LabeledDigraph::new(&labels, edges.into_iter().map(|(_, s, t)| (s, t)))
}

/// Canonical serialization: vertices by id, edges sorted by `(src, dst)`.
pub fn serialize_graph(g: &LabeledDigraph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.node_count()).unwrap();
    for v in g.nodes() {
        writeln!(out, "v {v} {}", g.label(v)).unwrap();
    }
    for (s, t) in g.edges() {
        writeln!(out, "e {s} {t}").unwrap();
    }
    out
}

/// A subgraph in the graph format, keeping host node ids.
pub fn serialize_subgraph(host: &LabeledDigraph, sub: &Subgraph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", sub.node_count()).unwrap();
    for &v in sub.nodes() {
        writeln!(out, "v {v} {}", host.label(v)).unwrap();
    }
    for &(s, t) in sub.edges() {
        writeln!(out, "e {s} {t}").unwrap();
    }
    out
}

/// `m <pattern-node> <graph-node>` lines in lexicographic order.
pub fn format_relation(s: &MatchRelation) -> String {
    s.to_string()
}

/// One `ball <center>` block per perfect subgraph, ascending by center.
pub fn format_match_result(host: &LabeledDigraph, r: &MatchResult) -> String {
    let mut out = String::new();
    for p in r {
        writeln!(out, "ball {}", p.ball_center).unwrap();
        out.push_str(&serialize_subgraph(host, &p.subgraph));
        out.push_str(&format_relation(&p.relation));
    }
    out
}
