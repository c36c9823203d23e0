//! Random instances and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use gpm_core::generate::{random_pattern, sample_pattern};
use gpm_core::{generate, parse_graph, GeneratorParams, LabeledDigraph, NodeId, Pattern};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn load_graph(name: &str) -> LabeledDigraph {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    parse_graph(&text).unwrap()
}

pub fn load_pattern(name: &str) -> Pattern {
    Pattern::new(load_graph(name)).unwrap()
}

/// Small random data graph: up to `max_n` nodes, few labels.
pub fn small_graph(seed: u64, max_n: usize) -> LabeledDigraph {
    let n = 2 + (seed as usize % (max_n - 1));
    let alpha = 1.0 + (seed % 5) as f64 * 0.1;
    let labels = 1 + (seed / 7) as usize % 3;
    let alpha = if (n as f64).powf(alpha).round() as usize > n * (n - 1) { 1.0 } else { alpha };
    generate(&GeneratorParams::new(n, alpha, labels, seed)).unwrap()
}

/// A (pattern, graph) pair. Odd seeds sample the pattern from the graph so
/// matches are likely; even seeds draw an unrelated random pattern.
pub fn instance(seed: u64, max_q: usize, max_n: usize) -> (Pattern, LabeledDigraph) {
    let g = small_graph(seed, max_n);
    let labels = g.label_count().max(1);
    let size = 1 + (seed / 3) as usize % max_q;
    let q = if seed % 2 == 1 {
        sample_pattern(&g, size, seed ^ 0x5eed).unwrap()
    } else {
        random_pattern(size, (seed / 5) as usize % 3, labels, seed ^ 0xface).unwrap()
    };
    (q, g)
}

/// All-pairs undirected distances by Floyd-Warshall.
pub fn all_pairs(g: &LabeledDigraph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for v in 0..n {
        d[v][v] = Some(0);
    }
    for (u, v) in g.edges() {
        if u != v {
            d[u][v] = Some(1);
            d[v][u] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Relation as per-pattern-node sorted sets; empty vec means no match.
pub type Rel = Vec<Vec<NodeId>>;

fn rel_is_empty(r: &Rel) -> bool {
    r.iter().all(|s| s.is_empty())
}

/// Restart-from-scratch fixpoint over the pairs `(u, v)` with equal labels.
/// `dual` adds the parent condition.
pub fn oracle_sim(q: &LabeledDigraph, g: &LabeledDigraph, dual: bool) -> Rel {
    let nq = q.node_count();
    let mut s: Vec<BTreeSet<NodeId>> = (0..nq)
        .map(|u| g.nodes().filter(|&v| g.label(v) == q.label(u)).collect())
        .collect();
    loop {
        let mut removed = false;
        for u in 0..nq {
            let bad: Vec<NodeId> = s[u]
                .iter()
                .copied()
                .filter(|&v| {
                    let child_ok = q.edges().filter(|&(a, _)| a == u).all(|(_, c)| {
                        g.edges().any(|(x, y)| x == v && s[c].contains(&y))
                    });
                    let parent_ok = !dual
                        || q.edges().filter(|&(_, b)| b == u).all(|(p, _)| {
                            g.edges().any(|(x, y)| y == v && s[p].contains(&x))
                        });
                    !(child_ok && parent_ok)
                })
                .collect();
            for v in bad {
                s[u].remove(&v);
                removed = true;
            }
        }
        if !removed {
            break;
        }
    }
    if s.iter().any(|x| x.is_empty()) {
        return vec![Vec::new(); nq];
    }
    s.into_iter().map(|x| x.into_iter().collect()).collect()
}

/// Nodes and edges of the match graph of `r` over `g`.
pub fn oracle_match_graph(q: &LabeledDigraph, g: &LabeledDigraph, r: &Rel) -> (BTreeSet<NodeId>, BTreeSet<(NodeId, NodeId)>) {
    let nodes: BTreeSet<NodeId> = r.iter().flatten().copied().collect();
    let edges = g
        .edges()
        .filter(|&(x, y)| q.edges().any(|(a, b)| r[a].contains(&x) && r[b].contains(&y)))
        .collect();
    (nodes, edges)
}

/// Undirected connected component of `start` in a node/edge set.
pub fn oracle_component(
    nodes: &BTreeSet<NodeId>,
    edges: &BTreeSet<(NodeId, NodeId)>,
    start: NodeId,
) -> BTreeSet<NodeId> {
    let mut comp = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && nodes.contains(&y) && comp.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    comp
}

/// The graph induced by `nodes` (host ids, sorted) with local ids.
pub fn induced(g: &LabeledDigraph, nodes: &[NodeId]) -> LabeledDigraph {
    let pos: BTreeMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let labels: Vec<&str> = nodes.iter().map(|&v| g.label(v)).collect();
    let edges = g
        .edges()
        .filter_map(|(x, y)| Some((*pos.get(&x)?, *pos.get(&y)?)));
    LabeledDigraph::new(&labels, edges).unwrap()
}

/// One perfect subgraph as (center, nodes, edges, relation) in host ids.
pub type OraclePg = (NodeId, Vec<NodeId>, Vec<(NodeId, NodeId)>, Rel);

/// Strong simulation straight from the definitions: every ball by
/// distance matrix, dual simulation by restart fixpoint, component of the
/// center, then exact duplicates merged and strictly contained ones dropped.
pub fn oracle_strong(q: &Pattern, g: &LabeledDigraph, radius: usize) -> Vec<OraclePg> {
    let dist = all_pairs(g);
    let mut found: Vec<OraclePg> = Vec::new();
    for w in g.nodes() {
        let ball: Vec<NodeId> = g.nodes().filter(|&v| dist[w][v].is_some_and(|d| d <= radius)).collect();
        let local = induced(g, &ball);
        let r = oracle_sim(q.graph(), &local, true);
        if rel_is_empty(&r) {
            continue;
        }
        let (nodes, edges) = oracle_match_graph(q.graph(), &local, &r);
        let cw = ball.binary_search(&w).unwrap();
        if !nodes.contains(&cw) {
            continue;
        }
        let comp = oracle_component(&nodes, &edges, cw);
        let sub_nodes: Vec<NodeId> = comp.iter().map(|&l| ball[l]).collect();
        let sub_edges: Vec<(NodeId, NodeId)> = edges
            .iter()
            .filter(|(a, b)| comp.contains(a) && comp.contains(b))
            .map(|&(a, b)| (ball[a], ball[b]))
            .collect();
        let rel: Rel = r
            .iter()
            .map(|s| s.iter().filter(|l| comp.contains(l)).map(|&l| ball[l]).collect())
            .collect();
        found.push((w, sub_nodes, sub_edges, rel));
    }
    let mut theta: Vec<OraclePg> = Vec::new();
    for p in &found {
        if theta.iter().any(|t| t.1 == p.1 && t.2 == p.2) {
            continue;
        }
        let contained = |t: &OraclePg| {
            p.1.iter().all(|v| t.1.contains(v)) && p.2.iter().all(|e| t.2.contains(e))
        };
        if found.iter().any(|t| (t.1 != p.1 || t.2 != p.2) && contained(t)) {
            continue;
        }
        theta.push(p.clone());
    }
    theta
}

/// Every injective label-preserving map with the induced edge condition,
/// by plain enumeration.
pub fn oracle_iso(q: &LabeledDigraph, g: &LabeledDigraph) -> Vec<Vec<NodeId>> {
    fn rec(q: &LabeledDigraph, g: &LabeledDigraph, m: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        if m.len() == q.node_count() {
            let ok = q.nodes().all(|u| q.nodes().all(|w| q.has_edge(u, w) == g.has_edge(m[u], m[w])));
            if ok {
                out.push(m.clone());
            }
            return;
        }
        let u = m.len();
        for v in g.nodes() {
            if !m.contains(&v) && g.label(v) == q.label(u) {
                m.push(v);
                rec(q, g, m, out);
                m.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(q, g, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `g` with node ids permuted by `perm` (old id `v` becomes `perm[v]`).
pub fn permute(g: &LabeledDigraph, perm: &[NodeId]) -> LabeledDigraph {
    let mut labels = vec![""; g.node_count()];
    for v in g.nodes() {
        labels[perm[v]] = g.label(v);
    }
    let mut edges: Vec<(NodeId, NodeId)> = g.edges().map(|(a, b)| (perm[a], perm[b])).collect();
    edges.reverse();
    LabeledDigraph::new(&labels, edges).unwrap()
}
