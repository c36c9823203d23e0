//! Graph simulation and dual simulation fixpoints, and match graphs.
//!
//! Both engines refine label-compatible candidate sets with a worklist of
//! removed `(pattern node, data node)` pairs. Each pattern edge keeps, per
//! candidate, a counter of witnesses still alive on the other side; a pair is
//! dropped once one of its counters reaches zero. The maximum relation is
//! unique, so the removal order does not matter.

use std::fmt;

use crate::graph::{Adjacency, LabelId, LabeledDigraph, LocalGraph, NodeId, Subgraph};
use crate::pattern::Pattern;

/// Match relation `S ⊆ V_q × V`, stored as one sorted candidate list
/// `sim(u)` per pattern node.
///
/// A relation where some pattern node has no candidate does not witness a
/// match, so it is normalized to the empty relation (all lists empty).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MatchRelation {
    sim: Vec<Vec<NodeId>>,
}

impl MatchRelation {
    pub fn empty(pattern_nodes: usize) -> Self {
        MatchRelation {
            sim: vec![Vec::new(); pattern_nodes],
        }
    }

    /// Sorts and deduplicates each set; collapses to empty if any set is empty.
    pub fn from_sets(mut sim: Vec<Vec<NodeId>>) -> Self {
        for s in sim.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        if sim.iter().any(Vec::is_empty) {
            sim.iter_mut().for_each(Vec::clear);
        }
        MatchRelation { sim }
    }

    pub fn pattern_node_count(&self) -> usize {
        self.sim.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sim.iter().all(Vec::is_empty)
    }

    pub fn sim(&self, u: NodeId) -> &[NodeId] {
        &self.sim[u]
    }

    pub fn sets(&self) -> &[Vec<NodeId>] {
        &self.sim
    }

    pub fn contains(&self, u: NodeId, v: NodeId) -> bool {
        self.sim[u].binary_search(&v).is_ok()
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.sim.iter().map(Vec::len).sum()
    }

    /// Pairs `(u, v)` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.sim
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
    }

    /// Data nodes occurring in the relation, ascending.
    pub fn nodes(&self) -> Vec<NodeId> {
        let mut all: Vec<NodeId> = self.sim.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Keeps only data nodes accepted by `keep`, collapsing if a set empties.
    pub fn restrict(&self, keep: impl Fn(NodeId) -> bool) -> Self {
        MatchRelation::from_sets(
            self.sim
                .iter()
                .map(|s| s.iter().copied().filter(|&v| keep(v)).collect())
                .collect(),
        )
    }
}

/// `m <pattern-node> <data-node>` lines, sorted.
impl fmt::Display for MatchRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, v) in self.pairs() {
            writeln!(f, "m {u} {v}")?;
        }
        Ok(())
    }
}

/// Candidate matrix over a data graph view, `nq × n` flags plus set sizes.
#[derive(Clone, Debug)]
pub(crate) struct Candidates {
    nq: usize,
    n: usize,
    bits: Vec<bool>,
    sizes: Vec<usize>,
}

impl Candidates {
    pub(crate) fn new(nq: usize, n: usize) -> Self {
        Candidates {
            nq,
            n,
            bits: vec![false; nq * n],
            sizes: vec![0; nq],
        }
    }

    /// Label-equality initialization.
    pub(crate) fn by_label<G: Adjacency + ?Sized>(g: &G, resolved: &[Option<LabelId>]) -> Self {
        let mut c = Candidates::new(resolved.len(), g.node_count());
        for (u, label) in resolved.iter().enumerate() {
            if let Some(label) = *label {
                for v in 0..g.node_count() {
                    if g.label_id(v) == label {
                        c.insert(u, v);
                    }
                }
            }
        }
        c
    }

    #[inline]
    pub(crate) fn contains(&self, u: NodeId, v: NodeId) -> bool {
        self.bits[u * self.n + v]
    }

    pub(crate) fn insert(&mut self, u: NodeId, v: NodeId) {
        let b = &mut self.bits[u * self.n + v];
        if !*b {
            *b = true;
            self.sizes[u] += 1;
        }
    }

    pub(crate) fn remove(&mut self, u: NodeId, v: NodeId) -> bool {
        let b = &mut self.bits[u * self.n + v];
        if *b {
            *b = false;
            self.sizes[u] -= 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn any_empty(&self) -> bool {
        self.sizes.iter().any(|&s| s == 0)
    }

    pub(crate) fn clear(&mut self) {
        self.bits.iter_mut().for_each(|b| *b = false);
        self.sizes.iter_mut().for_each(|s| *s = 0);
    }

    pub(crate) fn pattern_nodes(&self) -> usize {
        self.nq
    }

    pub(crate) fn is_matched(&self, v: NodeId) -> bool {
        (0..self.nq).any(|u| self.contains(u, v))
    }

    pub(crate) fn members(&self, u: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let row = &self.bits[u * self.n..(u + 1) * self.n];
        row.iter().enumerate().filter(|(_, b)| **b).map(|(v, _)| v)
    }

    /// Translate local ids through `to_global` into a relation.
    pub(crate) fn to_relation(&self, to_global: impl Fn(NodeId) -> NodeId) -> MatchRelation {
        MatchRelation::from_sets(
            (0..self.nq)
                .map(|u| self.members(u).map(&to_global).collect())
                .collect(),
        )
    }
}

/// Pattern edges indexed by endpoint.
pub(crate) struct PatternEdges {
    pub(crate) edges: Vec<(NodeId, NodeId)>,
    /// `out_edges[u]`: indices of edges `(u, _)`.
    pub(crate) out_edges: Vec<Vec<usize>>,
    /// `in_edges[u]`: indices of edges `(_, u)`.
    pub(crate) in_edges: Vec<Vec<usize>>,
}

impl PatternEdges {
    pub(crate) fn new(q: &LabeledDigraph) -> Self {
        let edges: Vec<_> = q.edges().collect();
        let mut out_edges = vec![Vec::new(); q.node_count()];
        let mut in_edges = vec![Vec::new(); q.node_count()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            out_edges[u].push(i);
            in_edges[v].push(i);
        }
        PatternEdges {
            edges,
            out_edges,
            in_edges,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Semantics {
    /// Child condition only.
    Simulation,
    /// Child and parent conditions.
    Dual,
}

/// Refines `cand` to the maximum relation contained in it. Returns `false`
/// (and clears `cand`) when some pattern node loses all candidates.
pub(crate) fn refine<G: Adjacency + ?Sized>(
    q: &LabeledDigraph,
    g: &G,
    cand: &mut Candidates,
    semantics: Semantics,
) -> bool {
    if cand.any_empty() {
        cand.clear();
        return false;
    }
    let pe = PatternEdges::new(q);
    let n = g.node_count();
    let m = pe.edges.len();
    let dual = semantics == Semantics::Dual;

    // succ_count[e*n + v] = |succ(v) ∩ sim(dst(e))| for v ∈ sim(src(e))
    // pred_count[e*n + v] = |pred(v) ∩ sim(src(e))| for v ∈ sim(dst(e))
    let mut succ_count = vec![0u32; m * n];
    let mut pred_count = if dual { vec![0u32; m * n] } else { Vec::new() };
    for (e, &(src, dst)) in pe.edges.iter().enumerate() {
        for v in 0..n {
            if cand.contains(src, v) {
                succ_count[e * n + v] = g
                    .successors(v)
                    .iter()
                    .filter(|&&w| cand.contains(dst, w))
                    .count() as u32;
            }
            if dual && cand.contains(dst, v) {
                pred_count[e * n + v] = g
                    .predecessors(v)
                    .iter()
                    .filter(|&&w| cand.contains(src, w))
                    .count() as u32;
            }
        }
    }

    let mut queue: Vec<(NodeId, NodeId)> = Vec::new();
    for (e, &(src, dst)) in pe.edges.iter().enumerate() {
        for v in 0..n {
            if cand.contains(src, v) && succ_count[e * n + v] == 0 && cand.remove(src, v) {
                queue.push((src, v));
            }
            if dual && cand.contains(dst, v) && pred_count[e * n + v] == 0 && cand.remove(dst, v)
            {
                queue.push((dst, v));
            }
        }
    }

    while let Some((u, x)) = queue.pop() {
        if cand.sizes[u] == 0 {
            cand.clear();
            return false;
        }
        // x no longer witnesses children for parents of x matched to a parent of u.
        for &e in &pe.in_edges[u] {
            let src = pe.edges[e].0;
            for &w in g.predecessors(x) {
                if cand.contains(src, w) {
                    let c = &mut succ_count[e * n + w];
                    *c -= 1;
                    if *c == 0 {
                        cand.remove(src, w);
                        queue.push((src, w));
                    }
                }
            }
        }
        if dual {
            for &e in &pe.out_edges[u] {
                let dst = pe.edges[e].1;
                for &w in g.successors(x) {
                    if cand.contains(dst, w) {
                        let c = &mut pred_count[e * n + w];
                        *c -= 1;
                        if *c == 0 {
                            cand.remove(dst, w);
                            queue.push((dst, w));
                        }
                    }
                }
            }
        }
    }
    if cand.any_empty() {
        cand.clear();
        return false;
    }
    true
}

pub(crate) fn solve<G: Adjacency + ?Sized>(
    q: &LabeledDigraph,
    g: &G,
    resolved: &[Option<LabelId>],
    semantics: Semantics,
) -> Candidates {
    let mut cand = Candidates::by_label(g, resolved);
    refine(q, g, &mut cand, semantics);
    cand
}

/// Maximum graph simulation relation of `q` in `g`, or the empty relation
/// when `g` does not match `q`.
pub fn graph_sim(q: &Pattern, g: &LabeledDigraph) -> MatchRelation {
    let resolved = q.resolve_labels(g);
    solve(q.graph(), g, &resolved, Semantics::Simulation).to_relation(|v| v)
}

/// Maximum dual simulation relation of `q` in `g`, or the empty relation.
pub fn dual_sim(q: &Pattern, g: &LabeledDigraph) -> MatchRelation {
    dual_sim_graph(q.graph(), g)
}

/// Dual simulation with an arbitrary (possibly disconnected) pattern graph.
pub fn dual_sim_graph(q: &LabeledDigraph, g: &LabeledDigraph) -> MatchRelation {
    let resolved: Vec<_> = q.labels().map(|l| g.find_label(l)).collect();
    solve(q, g, &resolved, Semantics::Dual).to_relation(|v| v)
}

/// Maximum dual simulation of `q` in the subgraph `sub` of `host`, in host ids.
pub fn dual_sim_within(q: &Pattern, host: &LabeledDigraph, sub: &Subgraph) -> MatchRelation {
    let local = LocalGraph::from_subgraph(host, sub);
    let resolved = q.resolve_labels(host);
    solve(q.graph(), &local, &resolved, Semantics::Dual).to_relation(|v| local.global(v))
}

/// Reference dual simulation: recheck every pair against the definition,
/// round after round, until nothing changes. Quadratic rounds; meant as a
/// test oracle for [`dual_sim`].
pub fn naive_dual_sim(q: &Pattern, g: &LabeledDigraph) -> MatchRelation {
    let nq = q.node_count();
    let mut sim: Vec<Vec<NodeId>> = (0..nq)
        .map(|u| g.nodes().filter(|&v| g.label(v) == q.label(u)).collect())
        .collect();
    loop {
        let mut changed = false;
        for u in 0..nq {
            let keep: Vec<NodeId> = sim[u]
                .iter()
                .copied()
                .filter(|&v| {
                    q.successors(u).iter().all(|&uc| {
                        g.successors(v).iter().any(|w| sim[uc].contains(w))
                    }) && q.predecessors(u).iter().all(|&up| {
                        g.predecessors(v).iter().any(|w| sim[up].contains(w))
                    })
                })
                .collect();
            if keep.len() != sim[u].len() {
                changed = true;
                sim[u] = keep;
            }
        }
        if !changed {
            break;
        }
    }
    MatchRelation::from_sets(sim)
}

/// Match graph w.r.t. `s`: all nodes of `s`, and every data edge `(v, v')`
/// witnessed by a pattern edge `(u, u')` with `(u, v), (u', v') ∈ s`.
pub fn match_graph<G: Adjacency + ?Sized>(q: &LabeledDigraph, g: &G, s: &MatchRelation) -> Subgraph {
    if s.is_empty() {
        return Subgraph::default();
    }
    let mut edges = Vec::new();
    for (u, up) in q.edges() {
        for &v in s.sim(u) {
            for &w in g.successors(v) {
                if s.contains(up, w) {
                    edges.push((v, w));
                }
            }
        }
    }
    Subgraph::new(s.nodes(), edges)
}
