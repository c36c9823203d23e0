//! Subgraph isomorphism by backtracking, and match-quality metrics that
//! compare the matchers against it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Adjacency, LabeledDigraph, NodeId};
use crate::pattern::Pattern;
use crate::simulation::{dual_sim, graph_sim, match_graph};
use crate::strong::match_strong;

/// Injective, label-preserving map from pattern nodes to data nodes under
/// which pattern edges and image edges correspond exactly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoMatch {
    pub mapping: Vec<NodeId>,
}

impl IsoMatch {
    /// Image node set, ascending.
    pub fn nodes(&self) -> Vec<NodeId> {
        let mut nodes = self.mapping.clone();
        nodes.sort_unstable();
        nodes
    }

    /// Direct re-check of the induced edge condition.
    pub fn is_valid(&self, q: &LabeledDigraph, g: &LabeledDigraph) -> bool {
        let m = &self.mapping;
        if m.len() != q.node_count() || self.nodes().windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        q.nodes().all(|u| {
            m[u] < g.node_count()
                && q.label(u) == g.label(m[u])
                && q.nodes().all(|w| q.has_edge(u, w) == g.has_edge(m[u], m[w]))
        })
    }
}

/// Pattern nodes in undirected BFS order from node 0, so every node after
/// the first has an earlier neighbor when the pattern is connected.
fn search_order(q: &LabeledDigraph) -> Vec<NodeId> {
    let mut order = Vec::with_capacity(q.node_count());
    let mut seen = vec![false; q.node_count()];
    for root in q.nodes() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        order.push(root);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in q.successors(u).iter().chain(q.predecessors(u)) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    q: &'a LabeledDigraph,
    g: &'a LabeledDigraph,
    order: Vec<NodeId>,
    labels: Vec<Option<crate::graph::LabelId>>,
    mapping: Vec<NodeId>,
    used: Vec<bool>,
    found: Vec<IsoMatch>,
}

impl Search<'_> {
    fn feasible(&self, depth: usize, u: NodeId, v: NodeId) -> bool {
        if self.used[v]
            || Some(self.g.label_id(v)) != self.labels[u]
            || self.g.successors(v).len() < self.q.successors(u).len()
            || self.g.predecessors(v).len() < self.q.predecessors(u).len()
            || self.q.has_edge(u, u) != self.g.has_edge(v, v)
        {
            return false;
        }
        self.order[..depth].iter().all(|&w| {
            let x = self.mapping[w];
            self.q.has_edge(u, w) == self.g.has_edge(v, x)
                && self.q.has_edge(w, u) == self.g.has_edge(x, v)
        })
    }

    fn candidates(&self, depth: usize, u: NodeId) -> Vec<NodeId> {
        // Anchor on an already mapped neighbor when there is one.
        for &w in &self.order[..depth] {
            if self.q.has_edge(w, u) {
                return self.g.successors(self.mapping[w]).to_vec();
            }
            if self.q.has_edge(u, w) {
                return self.g.predecessors(self.mapping[w]).to_vec();
            }
        }
        self.g.nodes().collect()
    }

    fn run(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.found.push(IsoMatch {
                mapping: self.mapping.clone(),
            });
            return;
        }
        let u = self.order[depth];
        for v in self.candidates(depth, u) {
            if self.feasible(depth, u, v) {
                self.mapping[u] = v;
                self.used[v] = true;
                self.run(depth + 1);
                self.used[v] = false;
            }
        }
    }
}

/// Every isomorphic match of `q` in `g`, sorted by mapping.
pub fn subgraph_iso_all(q: &Pattern, g: &LabeledDigraph) -> Vec<IsoMatch> {
    if q.node_count() > g.node_count() {
        return Vec::new();
    }
    let labels = q.resolve_labels(g);
    if labels.iter().any(Option::is_none) {
        return Vec::new();
    }
    let mut search = Search {
        q: q.graph(),
        g,
        order: search_order(q.graph()),
        labels,
        mapping: vec![usize::MAX; q.node_count()],
        used: vec![false; g.node_count()],
        found: Vec::new(),
    };
    search.run(0);
    let mut found = search.found;
    found.sort_unstable();
    found
}

/// Distinct match graphs among `matches`. Under induced semantics a match
/// graph is determined by its node set.
pub fn distinct_match_graphs(matches: &[IsoMatch]) -> Vec<Vec<NodeId>> {
    let set: BTreeSet<Vec<NodeId>> = matches.iter().map(IsoMatch::nodes).collect();
    set.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Sim,
    Dual,
    Strong,
    Iso,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Sim, Algorithm::Dual, Algorithm::Strong, Algorithm::Iso];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sim => "sim",
            Algorithm::Dual => "dual",
            Algorithm::Strong => "strong",
            Algorithm::Iso => "iso",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown algorithm `{s}` (sim, dual, strong, iso)")))
    }
}

/// Matched subgraphs of one algorithm, as node sets.
fn matched_subgraphs(q: &Pattern, g: &LabeledDigraph, algo: Algorithm) -> Vec<Vec<NodeId>> {
    match algo {
        Algorithm::Sim | Algorithm::Dual => {
            let s = if algo == Algorithm::Sim {
                graph_sim(q, g)
            } else {
                dual_sim(q, g)
            };
            if s.is_empty() {
                Vec::new()
            } else {
                vec![match_graph(q.graph(), g, &s).nodes().to_vec()]
            }
        }
        Algorithm::Strong => match_strong(q, g)
            .iter()
            .map(|p| p.subgraph.nodes().to_vec())
            .collect(),
        Algorithm::Iso => distinct_match_graphs(&subgraph_iso_all(q, g)),
    }
}

fn node_union(subgraphs: &[Vec<NodeId>]) -> BTreeSet<NodeId> {
    subgraphs.iter().flatten().copied().collect()
}

/// Matched-node totals behind a closeness value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Closeness {
    pub iso_nodes: usize,
    pub found_nodes: usize,
}

impl Closeness {
    pub fn value(&self) -> f64 {
        if self.found_nodes == 0 {
            1.0
        } else {
            self.iso_nodes as f64 / self.found_nodes as f64
        }
    }
}

impl fmt::Display for Closeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}", self.value())
    }
}

fn closeness_from(iso: &BTreeSet<NodeId>, found: &BTreeSet<NodeId>, algo: Algorithm) -> Result<Closeness> {
    if found.is_empty() && !iso.is_empty() {
        return Err(Error::Invariant(format!(
            "{algo} found no matches but isomorphism matched {} nodes",
            iso.len()
        )));
    }
    Ok(Closeness {
        iso_nodes: iso.len(),
        found_nodes: found.len(),
    })
}

/// Ratio of nodes matched by subgraph isomorphism to nodes matched by `algo`.
pub fn closeness(q: &Pattern, g: &LabeledDigraph, algo: Algorithm) -> Result<Closeness> {
    let iso = node_union(&matched_subgraphs(q, g, Algorithm::Iso));
    let found = if algo == Algorithm::Iso {
        iso.clone()
    } else {
        node_union(&matched_subgraphs(q, g, algo))
    };
    closeness_from(&iso, &found, algo)
}

/// Counts of matched subgraphs by node count, in buckets of ten up to 49
/// and one open bucket from 50.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SizeHistogram {
    pub buckets: [usize; 6],
}

impl SizeHistogram {
    pub fn from_sizes(sizes: impl IntoIterator<Item = usize>) -> Self {
        let mut h = SizeHistogram::default();
        for s in sizes {
            h.buckets[(s / 10).min(5)] += 1;
        }
        h
    }

    pub fn bucket_label(i: usize) -> String {
        if i >= 5 {
            "50-inf".to_string()
        } else {
            format!("{}-{}", i * 10, i * 10 + 9)
        }
    }

    pub fn total(&self) -> usize {
        self.buckets.iter().sum()
    }
}

impl fmt::Display for SizeHistogram {
    /// Non-empty buckets only.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &c) in self.buckets.iter().enumerate() {
            if c > 0 {
                writeln!(f, "hist {} {c}", SizeHistogram::bucket_label(i))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QualityReport {
    pub algorithm: Algorithm,
    pub closeness: Option<Closeness>,
    pub subgraph_count: usize,
    pub histogram: SizeHistogram,
}

impl fmt::Display for QualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = &self.closeness {
            writeln!(f, "closeness {c}")?;
        }
        writeln!(f, "subgraphs {}", self.subgraph_count)?;
        write!(f, "{}", self.histogram)
    }
}

/// Subgraph count, size histogram and, when `with_closeness` is set,
/// closeness against the isomorphism oracle.
pub fn quality_report(
    q: &Pattern,
    g: &LabeledDigraph,
    algo: Algorithm,
    with_closeness: bool,
) -> Result<QualityReport> {
    let subgraphs = matched_subgraphs(q, g, algo);
    let closeness = if with_closeness {
        let found = node_union(&subgraphs);
        let iso = if algo == Algorithm::Iso {
            found.clone()
        } else {
            node_union(&matched_subgraphs(q, g, Algorithm::Iso))
        };
        Some(closeness_from(&iso, &found, algo)?)
    } else {
        None
    };
    Ok(QualityReport {
        algorithm: algo,
        closeness,
        subgraph_count: subgraphs.len(),
        histogram: SizeHistogram::from_sizes(subgraphs.iter().map(Vec::len)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(labels: &[&str], edges: &[(usize, usize)]) -> Pattern {
        Pattern::new(LabeledDigraph::new(labels, edges.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn single_node_matches_every_label_occurrence() {
        let q = pattern(&["A"], &[]);
        let g = LabeledDigraph::new(&["A", "B", "A", "A"], [(0, 1)]).unwrap();
        let m = subgraph_iso_all(&q, &g);
        assert_eq!(m.len(), 3);
        assert_eq!(closeness(&q, &g, Algorithm::Iso).unwrap().value(), 1.0);
    }

    #[test]
    fn induced_semantics_rejects_extra_edges() {
        // The triangle's extra edge 0 -> 2 breaks the path pattern.
        let q = pattern(&["A", "B", "C"], &[(0, 1), (1, 2)]);
        let tri = LabeledDigraph::new(&["A", "B", "C"], [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(subgraph_iso_all(&q, &tri).is_empty());
        let path = LabeledDigraph::new(&["A", "B", "C"], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(subgraph_iso_all(&q, &path), vec![IsoMatch { mapping: vec![0, 1, 2] }]);
    }

    #[test]
    fn self_loops_must_correspond() {
        let q = pattern(&["A"], &[(0, 0)]);
        let g = LabeledDigraph::new(&["A", "A"], [(1, 1)]).unwrap();
        assert_eq!(subgraph_iso_all(&q, &g), vec![IsoMatch { mapping: vec![1] }]);
    }

    #[test]
    fn symmetric_pattern_counts_mappings_and_graphs() {
        let q = pattern(&["P", "P"], &[(0, 1), (1, 0)]);
        let g = LabeledDigraph::new(&["P", "P", "P"], [(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        let m = subgraph_iso_all(&q, &g);
        assert_eq!(m.len(), 4);
        assert!(m.iter().all(|x| x.is_valid(q.graph(), &g)));
        assert_eq!(distinct_match_graphs(&m), vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn vacuous_closeness_is_one() {
        let q = pattern(&["Z"], &[]);
        let g = LabeledDigraph::new(&["A"], []).unwrap();
        for algo in Algorithm::ALL {
            let c = closeness(&q, &g, algo).unwrap();
            assert_eq!((c.iso_nodes, c.found_nodes), (0, 0));
            assert_eq!(c.to_string(), "1.0000");
        }
    }

    #[test]
    fn empty_graph_report() {
        let q = pattern(&["A"], &[]);
        let g = LabeledDigraph::empty();
        for algo in Algorithm::ALL {
            let r = quality_report(&q, &g, algo, true).unwrap();
            assert_eq!(r.subgraph_count, 0);
            assert_eq!(r.histogram.total(), 0);
            assert_eq!(r.to_string(), "closeness 1.0000\nsubgraphs 0\n");
        }
    }

    #[test]
    fn histogram_buckets() {
        let h = SizeHistogram::from_sizes([0, 9, 10, 49, 50, 500]);
        assert_eq!(h.buckets, [2, 1, 0, 0, 1, 2]);
        assert_eq!(h.to_string(), "hist 0-9 2\nhist 10-19 1\nhist 40-49 1\nhist 50-inf 2\n");
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("vf2".parse::<Algorithm>().is_err());
    }
}
