//! Strong simulation: per-ball dual simulation and perfect subgraph
//! extraction.

use std::collections::{HashMap, HashSet};

use log::debug;
use rayon::prelude::*;

use crate::graph::{
    Adjacency, Ball, BallBuilder, LabelId, LabeledDigraph, NodeId, Subgraph,
};
use crate::pattern::Pattern;
use crate::simulation::{refine, Candidates, MatchRelation, Semantics};

/// A connected match graph extracted from the ball around `ball_center`,
/// with the ball's maximum dual simulation relation restricted to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectSubgraph {
    pub ball_center: NodeId,
    pub subgraph: Subgraph,
    pub relation: MatchRelation,
}

/// The set Θ of perfect subgraphs, ordered by ball center.
///
/// Subgraphs found from several centers appear once, under the smallest
/// center. A subgraph that is strictly contained in another member of Θ is
/// dropped, so Θ holds only the maximal perfect subgraphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchResult {
    theta: Vec<PerfectSubgraph>,
}

impl MatchResult {
    /// Canonicalizes per-ball results: sort by center, merge identical
    /// subgraphs and drop strictly subsumed ones.
    pub fn from_perfect_subgraphs(mut found: Vec<PerfectSubgraph>) -> Self {
        found.sort_by_key(|p| p.ball_center);
        let mut seen = HashSet::new();
        found.retain(|p| seen.insert(p.subgraph.clone()));

        // node -> indices of subgraphs containing it
        let mut by_node: HashMap<NodeId, Vec<usize>> = HashMap::new();
        for (i, p) in found.iter().enumerate() {
            for &v in p.subgraph.nodes() {
                by_node.entry(v).or_default().push(i);
            }
        }
        let subsumed: Vec<bool> = found
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let Some(&first) = p.subgraph.nodes().first() else {
                    return false;
                };
                by_node[&first].iter().any(|&j| {
                    j != i
                        && found[j].subgraph.node_count() >= p.subgraph.node_count()
                        && p.subgraph.is_subgraph_of(&found[j].subgraph)
                })
            })
            .collect();
        let theta = found
            .into_iter()
            .zip(subsumed)
            .filter_map(|(p, s)| (!s).then_some(p))
            .collect();
        MatchResult { theta }
    }

    pub fn theta(&self) -> &[PerfectSubgraph] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PerfectSubgraph> {
        self.theta.iter()
    }

    /// Applies `f` to every relation, e.g. to translate pattern node ids.
    pub fn map_relations(&self, f: impl Fn(&MatchRelation) -> MatchRelation) -> Self {
        MatchResult {
            theta: self
                .theta
                .iter()
                .map(|p| PerfectSubgraph {
                    ball_center: p.ball_center,
                    subgraph: p.subgraph.clone(),
                    relation: f(&p.relation),
                })
                .collect(),
        }
    }
}

impl<'a> IntoIterator for &'a MatchResult {
    type Item = &'a PerfectSubgraph;
    type IntoIter = std::slice::Iter<'a, PerfectSubgraph>;

    fn into_iter(self) -> Self::IntoIter {
        self.theta.iter()
    }
}

/// Union of the node sets of all perfect subgraphs, ascending.
pub fn matched_nodes(result: &MatchResult) -> Vec<NodeId> {
    let mut all: Vec<NodeId> = result
        .iter()
        .flat_map(|p| p.subgraph.nodes().iter().copied())
        .collect();
    all.sort_unstable();
    all.dedup();
    all
}

/// Tuning knobs shared by the matchers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MatchOptions {
    /// Ball radius; `None` uses the pattern diameter.
    pub radius: Option<usize>,
    /// Worker threads for ball evaluation; 0 picks automatically, 1 runs inline.
    pub threads: usize,
}

/// Connected component of the match graph containing the ball center, with
/// `cand` (local ids of `ball`) restricted to it. `None` if the center is
/// unmatched.
pub(crate) fn extract_local(
    q: &LabeledDigraph,
    ball: &Ball,
    cand: &Candidates,
) -> Option<PerfectSubgraph> {
    let g = ball.graph();
    let center = ball.center_local();
    if !cand.is_matched(center) {
        return None;
    }
    let n = g.node_count();
    let nq = cand.pattern_nodes();
    let pattern_edges: Vec<(NodeId, NodeId)> = q.edges().collect();

    // Undirected walk over match-graph edges from the center.
    let mut seen = vec![false; n];
    seen[center] = true;
    let mut stack = vec![center];
    let mut edges = Vec::new();
    while let Some(v) = stack.pop() {
        for &(u, up) in &pattern_edges {
            if cand.contains(u, v) {
                for &w in g.successors(v) {
                    if cand.contains(up, w) {
                        edges.push((v, w));
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
            if cand.contains(up, v) {
                for &w in g.predecessors(v) {
                    if cand.contains(u, w) && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
    }
    let nodes: Vec<NodeId> = (0..n).filter(|&v| seen[v]).map(|v| g.global(v)).collect();
    let edges = edges
        .into_iter()
        .map(|(a, b)| (g.global(a), g.global(b)))
        .collect();
    let sim = (0..nq)
        .map(|u| {
            cand.members(u)
                .filter(|&v| seen[v])
                .map(|v| g.global(v))
                .collect()
        })
        .collect();
    Some(PerfectSubgraph {
        ball_center: ball.center(),
        subgraph: Subgraph::new(nodes, edges),
        relation: MatchRelation::from_sets(sim),
    })
}

/// Local candidate matrix of a host-id relation projected onto a ball.
pub(crate) fn project(s: &MatchRelation, ball: &Ball) -> Candidates {
    let g = ball.graph();
    let mut cand = Candidates::new(s.pattern_node_count(), g.node_count());
    for (u, v) in s.pairs() {
        if let Some(l) = g.local(v) {
            cand.insert(u, l);
        }
    }
    cand
}

/// Perfect subgraph of `ball` given the ball's maximum dual simulation
/// relation `s_w` (host ids); `None` when the center does not appear in it.
pub fn extract_max_pg(q: &Pattern, ball: &Ball, s_w: &MatchRelation) -> Option<PerfectSubgraph> {
    if s_w.is_empty() {
        return None;
    }
    extract_local(q.graph(), ball, &project(s_w, ball))
}

/// Maximum dual simulation relation of `q` over the ball, in host ids.
pub fn dual_sim_ball(q: &Pattern, host: &LabeledDigraph, ball: &Ball) -> MatchRelation {
    let resolved = q.resolve_labels(host);
    let cand = ball_dual_sim(q.graph(), ball, &resolved);
    cand.to_relation(|v| ball.graph().global(v))
}

pub(crate) fn ball_dual_sim(q: &LabeledDigraph, ball: &Ball, resolved: &[Option<LabelId>]) -> Candidates {
    let mut cand = Candidates::by_label(ball.graph(), resolved);
    refine(q, ball.graph(), &mut cand, Semantics::Dual);
    cand
}

/// One iteration of the ball loop: DualSim on the ball, then ExtractMaxPG.
pub(crate) fn evaluate_ball(
    q: &LabeledDigraph,
    ball: &Ball,
    resolved: &[Option<LabelId>],
) -> Option<PerfectSubgraph> {
    let cand = ball_dual_sim(q, ball, resolved);
    extract_local(q, ball, &cand)
}

pub(crate) fn run_parallel<T, F>(centers: &[NodeId], n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut BallBuilder, NodeId) -> Option<T> + Sync,
{
    if threads == 1 || centers.len() < 2 {
        let mut builder = BallBuilder::new(n);
        return centers.iter().filter_map(|&w| f(&mut builder, w)).collect();
    }
    let job = || {
        centers
            .par_iter()
            .map_init(|| BallBuilder::new(n), |b, &w| f(b, w))
            .flatten()
            .collect()
    };
    if threads == 0 {
        job()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(job),
            Err(_) => job(),
        }
    }
}

/// Algorithm Match: evaluates the ball of radius `d_Q` around every node.
pub fn match_strong(q: &Pattern, g: &LabeledDigraph) -> MatchResult {
    match_strong_with(q, g, &MatchOptions::default())
}

pub fn match_strong_with(q: &Pattern, g: &LabeledDigraph, opts: &MatchOptions) -> MatchResult {
    let radius = opts.radius.unwrap_or(q.diameter());
    let resolved = q.resolve_labels(g);
    let centers: Vec<NodeId> = g.nodes().collect();
    debug!(
        "match: {} balls of radius {radius} over {} nodes",
        centers.len(),
        g.node_count()
    );
    let found = run_parallel(&centers, g.node_count(), opts.threads, |builder, w| {
        let ball = builder.build(g, w, radius);
        evaluate_ball(q.graph(), &ball, &resolved)
    });
    MatchResult::from_perfect_subgraphs(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_ball;

    fn pattern(labels: &[&str], edges: &[(usize, usize)]) -> Pattern {
        Pattern::new(LabeledDigraph::new(labels, edges.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn empty_relation_extracts_nothing() {
        let q = pattern(&["A", "B"], &[(0, 1)]);
        let g = LabeledDigraph::new(&["A", "B"], [(0, 1)]).unwrap();
        let ball = build_ball(&g, 0, 1).unwrap();
        assert!(extract_max_pg(&q, &ball, &MatchRelation::empty(2)).is_none());
    }

    #[test]
    fn unmatched_center_extracts_nothing() {
        // Center C2 sits next to a valid A0 -> B1 match but matches nothing itself.
        let q = pattern(&["A", "B"], &[(0, 1)]);
        let g = LabeledDigraph::new(&["A", "B", "C"], [(0, 1), (2, 1)]).unwrap();
        let ball = build_ball(&g, 2, 2).unwrap();
        let s_w = dual_sim_ball(&q, &g, &ball);
        assert_eq!(s_w.nodes(), vec![0, 1]);
        assert!(extract_max_pg(&q, &ball, &s_w).is_none());
    }

    #[test]
    fn extraction_keeps_center_component() {
        let q = pattern(&["A", "B"], &[(0, 1)]);
        let g = LabeledDigraph::new(&["A", "B", "A", "B", "C"], [(0, 1), (2, 3), (1, 4), (4, 3)])
            .unwrap();
        let ball = build_ball(&g, 0, 4).unwrap();
        let s_w = dual_sim_ball(&q, &g, &ball);
        assert_eq!(s_w.nodes(), vec![0, 1, 2, 3]);
        let pg = extract_max_pg(&q, &ball, &s_w).unwrap();
        assert_eq!(pg.subgraph.nodes(), &[0, 1]);
        assert_eq!(pg.subgraph.edges(), &[(0, 1)]);
        assert_eq!(pg.relation.sim(0), &[0]);
    }

    #[test]
    fn theta_merges_duplicates_and_subsumed() {
        let small = Subgraph::new(vec![0, 1], vec![(0, 1)]);
        let big = Subgraph::new(vec![0, 1, 2], vec![(0, 1), (1, 2)]);
        let other = Subgraph::new(vec![5], vec![]);
        let rel = MatchRelation::from_sets(vec![vec![0]]);
        let ps = |c, s: &Subgraph| PerfectSubgraph {
            ball_center: c,
            subgraph: s.clone(),
            relation: rel.clone(),
        };
        let r = MatchResult::from_perfect_subgraphs(vec![
            ps(4, &big),
            ps(0, &small),
            ps(2, &big),
            ps(5, &other),
        ]);
        let centers: Vec<_> = r.iter().map(|p| p.ball_center).collect();
        assert_eq!(centers, vec![2, 5]);
        assert!(small.is_subgraph_of(&big));
        assert!(matched_nodes(&MatchResult::default()).is_empty());
        assert_eq!(matched_nodes(&r), vec![0, 1, 2, 5]);
    }

    #[test]
    fn single_node_result() {
        let q = pattern(&["A"], &[]);
        let g = LabeledDigraph::new(&["A", "B"], [(0, 1)]).unwrap();
        let r = match_strong(&q, &g);
        assert_eq!(r.len(), 1);
        assert_eq!(matched_nodes(&r), vec![0]);
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let q = pattern(&["A", "B"], &[(0, 1)]);
        let g = LabeledDigraph::new(
            &["A", "B", "A", "B", "A"],
            [(0, 1), (2, 1), (2, 3), (4, 3), (3, 0)],
        )
        .unwrap();
        let seq = match_strong_with(&q, &g, &MatchOptions { radius: None, threads: 1 });
        let par = match_strong_with(&q, &g, &MatchOptions { radius: None, threads: 3 });
        assert_eq!(seq, par);
    }
}
