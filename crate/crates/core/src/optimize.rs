//! Match+: query minimization, dual simulation filtering and connectivity
//! pruning layered over the plain ball loop.

use log::debug;

use crate::graph::{Adjacency, Ball, LabeledDigraph, NodeId};
use crate::pattern::Pattern;
use crate::simulation::{dual_sim, dual_sim_graph, Candidates, MatchRelation, PatternEdges};
use crate::strong::{extract_local, project, run_parallel, MatchOptions, MatchResult, PerfectSubgraph};

/// Minimum equivalent pattern `Q_m` of some `Q`.
///
/// `class_of[u]` is the `Q_m` node holding original node `u`. Balls keep the
/// original diameter as radius, since `Q_m` may have a smaller one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizedPattern {
    pub pattern: Pattern,
    pub class_of: Vec<NodeId>,
    pub effective_radius: usize,
}

impl MinimizedPattern {
    /// Original nodes grouped by class, classes in `Q_m` id order.
    pub fn classes(&self) -> Vec<Vec<NodeId>> {
        let mut classes = vec![Vec::new(); self.pattern.node_count()];
        for (u, &c) in self.class_of.iter().enumerate() {
            classes[c].push(u);
        }
        classes
    }

    /// Re-expresses a relation over `Q_m` in original pattern node ids.
    pub fn lift_relation(&self, s: &MatchRelation) -> MatchRelation {
        MatchRelation::from_sets(self.class_of.iter().map(|&c| s.sim(c).to_vec()).collect())
    }

    pub fn lift_result(&self, r: &MatchResult) -> MatchResult {
        r.map_relations(|s| self.lift_relation(s))
    }
}

/// minQ: merges pattern nodes that dual-simulate each other in `Q ≺_D Q`.
///
/// Classes are numbered by their smallest member; `Q_m` has an edge between
/// two classes iff some members are joined by a pattern edge.
pub fn min_q(q: &Pattern) -> MinimizedPattern {
    let s = dual_sim_graph(q.graph(), q.graph());
    let n = q.node_count();
    let mut class_of = vec![usize::MAX; n];
    let mut labels = Vec::new();
    for u in 0..n {
        if class_of[u] != usize::MAX {
            continue;
        }
        let c = labels.len();
        labels.push(q.label(u).to_string());
        for &v in s.sim(u) {
            if v >= u && s.contains(v, u) {
                class_of[v] = c;
            }
        }
    }
    let mut edges: Vec<(NodeId, NodeId)> = q
        .edges()
        .map(|(u, v)| (class_of[u], class_of[v]))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let graph = LabeledDigraph::new(&labels, edges).expect("quotient of a valid pattern");
    let pattern = Pattern::new(graph).expect("quotient of a connected pattern is connected");
    MinimizedPattern {
        pattern,
        class_of,
        effective_radius: q.diameter(),
    }
}

/// An invalid pair queued for removal while filtering one ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterEvent {
    pub pattern_node: NodeId,
    pub data_node: NodeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterOutcome {
    pub perfect: Option<PerfectSubgraph>,
    /// Queue pushes in order, host ids.
    pub events: Vec<FilterEvent>,
}

fn has_child_witness<G: Adjacency + ?Sized>(g: &G, cand: &Candidates, v: NodeId, child: NodeId) -> bool {
    g.successors(v).iter().any(|&w| cand.contains(child, w))
}

fn has_parent_witness<G: Adjacency + ?Sized>(g: &G, cand: &Candidates, v: NodeId, parent: NodeId) -> bool {
    g.predecessors(v).iter().any(|&w| cand.contains(parent, w))
}

/// Border-seeded removal over a projected relation. `cand` must already be
/// a superset of the ball's maximum relation whose only possibly invalid
/// pairs sit on border nodes. Returns the queue pushes in local ids.
fn filter_from_border(q: &LabeledDigraph, ball: &Ball, cand: &mut Candidates) -> Vec<(NodeId, NodeId)> {
    let g = ball.graph();
    let pe = PatternEdges::new(q);
    let nq = q.node_count();
    let mut queued = vec![false; nq * g.node_count()];
    let mut pushed = Vec::new();
    let mut queue = std::collections::VecDeque::new();

    let valid = |cand: &Candidates, u: NodeId, v: NodeId| {
        pe.out_edges[u]
            .iter()
            .all(|&e| has_child_witness(g, cand, v, pe.edges[e].1))
            && pe.in_edges[u]
                .iter()
                .all(|&e| has_parent_witness(g, cand, v, pe.edges[e].0))
    };

    for b in ball.border_local() {
        for u in 0..nq {
            if cand.contains(u, b) && !valid(cand, u, b) {
                queued[u * g.node_count() + b] = true;
                pushed.push((u, b));
                queue.push_back((u, b));
            }
        }
    }

    while let Some((u, v)) = queue.pop_front() {
        cand.remove(u, v);
        // Parents of v matched to parents of u may have lost their last child witness.
        for &e in &pe.in_edges[u] {
            let up = pe.edges[e].0;
            for &w in g.predecessors(v) {
                let slot = up * g.node_count() + w;
                if cand.contains(up, w) && !queued[slot] && !has_child_witness(g, cand, w, u) {
                    queued[slot] = true;
                    pushed.push((up, w));
                    queue.push_back((up, w));
                }
            }
        }
        // Children of v matched to children of u may have lost their last parent witness.
        for &e in &pe.out_edges[u] {
            let uc = pe.edges[e].1;
            for &w in g.successors(v) {
                let slot = uc * g.node_count() + w;
                if cand.contains(uc, w) && !queued[slot] && !has_parent_witness(g, cand, w, u) {
                    queued[slot] = true;
                    pushed.push((uc, w));
                    queue.push_back((uc, w));
                }
            }
        }
    }
    if cand.any_empty() {
        cand.clear();
    }
    pushed
}

fn events_to_global(ball: &Ball, pushed: &[(NodeId, NodeId)]) -> Vec<FilterEvent> {
    pushed
        .iter()
        .map(|&(u, v)| FilterEvent {
            pattern_node: u,
            data_node: ball.graph().global(v),
        })
        .collect()
}

/// dualFilter: projects the whole-graph maximum relation `s_global` onto
/// the ball, removes invalid pairs starting from border nodes and extracts
/// the perfect subgraph. Same answer as running dual simulation on the ball
/// from scratch.
pub fn dual_filter(q: &Pattern, s_global: &MatchRelation, ball: &Ball) -> FilterOutcome {
    let mut cand = project(s_global, ball);
    if s_global.is_empty() || !cand.is_matched(ball.center_local()) {
        return FilterOutcome {
            perfect: None,
            events: Vec::new(),
        };
    }
    let pushed = filter_from_border(q.graph(), ball, &mut cand);
    FilterOutcome {
        perfect: extract_local(q.graph(), ball, &cand),
        events: events_to_global(ball, &pushed),
    }
}

/// Drops candidates that cannot reach the ball center through the
/// subgraph induced by all candidates (edge direction ignored).
fn prune_local(ball: &Ball, cand: &mut Candidates) {
    let g = ball.graph();
    let center = ball.center_local();
    if !cand.is_matched(center) {
        cand.clear();
        return;
    }
    let n = g.node_count();
    let is_cand: Vec<bool> = (0..n).map(|v| cand.is_matched(v)).collect();
    let mut reach = vec![false; n];
    reach[center] = true;
    let mut stack = vec![center];
    while let Some(v) = stack.pop() {
        for &w in g.successors(v).iter().chain(g.predecessors(v)) {
            if is_cand[w] && !reach[w] {
                reach[w] = true;
                stack.push(w);
            }
        }
    }
    for v in 0..n {
        if is_cand[v] && !reach[v] {
            for u in 0..cand.pattern_nodes() {
                cand.remove(u, v);
            }
        }
    }
    if cand.any_empty() {
        cand.clear();
    }
}

/// Connectivity pruning of a ball relation `s_w` (host ids).
pub fn connectivity_prune(q: &Pattern, ball: &Ball, s_w: &MatchRelation) -> MatchRelation {
    debug_assert_eq!(q.node_count(), s_w.pattern_node_count());
    if s_w.is_empty() {
        return s_w.clone();
    }
    let mut cand = project(s_w, ball);
    prune_local(ball, &mut cand);
    cand.to_relation(|v| ball.graph().global(v))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlusStats {
    pub balls_built: usize,
    pub balls_skipped: usize,
    /// Balls where the border check found at least one invalid pair.
    pub balls_filtered: usize,
}

/// Match+ output. `result` is expressed in `Q_m` node ids; use
/// [`PlusOutcome::lifted`] for original pattern ids.
#[derive(Clone, Debug)]
pub struct PlusOutcome {
    pub minimized: MinimizedPattern,
    pub result: MatchResult,
    pub stats: PlusStats,
}

impl PlusOutcome {
    pub fn lifted(&self) -> MatchResult {
        self.minimized.lift_result(&self.result)
    }
}

pub fn match_plus(q: &Pattern, g: &LabeledDigraph) -> PlusOutcome {
    match_plus_with(q, g, &MatchOptions::default())
}

/// Match+: minimize, compute the global dual simulation once, then per
/// matched center project, prune and filter. Unmatched centers are skipped.
pub fn match_plus_with(q: &Pattern, g: &LabeledDigraph, opts: &MatchOptions) -> PlusOutcome {
    let minimized = min_q(q);
    let radius = opts.radius.unwrap_or(minimized.effective_radius);
    let qm = &minimized.pattern;
    let s_global = dual_sim(qm, g);
    let centers = s_global.nodes();
    debug!(
        "match+: |Q| = {} -> |Q_m| = {}, {} of {} centers matched",
        q.node_count(),
        qm.node_count(),
        centers.len(),
        g.node_count()
    );

    let per_ball = run_parallel(&centers, g.node_count(), opts.threads, |builder, w| {
        let ball = builder.build(g, w, radius);
        let mut cand = project(&s_global, &ball);
        prune_local(&ball, &mut cand);
        if cand.any_empty() {
            return Some((None, false));
        }
        let pushed = filter_from_border(qm.graph(), &ball, &mut cand);
        Some((extract_local(qm.graph(), &ball, &cand), !pushed.is_empty()))
    });

    let stats = PlusStats {
        balls_built: centers.len(),
        balls_skipped: g.node_count() - centers.len(),
        balls_filtered: per_ball.iter().filter(|(_, f)| *f).count(),
    };
    let found = per_ball.into_iter().filter_map(|(p, _)| p).collect();
    PlusOutcome {
        minimized,
        result: MatchResult::from_perfect_subgraphs(found),
        stats,
    }
}
