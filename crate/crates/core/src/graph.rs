//! Node-labeled directed graphs and the structural primitives the matchers
//! are built on: undirected BFS, diameter, components, cycles and balls.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Dense node identifier, `0..n`.
pub type NodeId = usize;

const UNSEEN: usize = usize::MAX;

/// Interned label. Only meaningful together with the graph that issued it;
/// subgraphs and balls reuse the label ids of their host.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelId(pub(crate) u32);

impl LabelId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Read-only adjacency access shared by whole graphs, balls and extracted
/// subgraphs. Successor and predecessor slices are sorted ascending.
pub trait Adjacency {
    fn node_count(&self) -> usize;
    fn successors(&self, v: NodeId) -> &[NodeId];
    fn predecessors(&self, v: NodeId) -> &[NodeId];
    fn label_id(&self, v: NodeId) -> LabelId;

    fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.successors(u).binary_search(&v).is_ok()
    }

    fn edge_count(&self) -> usize {
        (0..self.node_count()).map(|v| self.successors(v).len()).sum()
    }
}

/// A finite node-labeled directed graph `G(V, E, l)`.
///
/// Nodes are `0..n`, every node carries exactly one label, `E` is a set
/// (self-loops allowed, parallel edges rejected) and the reverse adjacency
/// is the exact transpose of the forward adjacency. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDigraph {
    labels: Vec<LabelId>,
    label_names: Vec<String>,
    label_lookup: HashMap<String, LabelId>,
    out: Vec<Vec<NodeId>>,
    inn: Vec<Vec<NodeId>>,
    edge_count: usize,
}

pub(crate) fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() || label.chars().any(char::is_whitespace) {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(())
}

impl LabeledDigraph {
    /// Builds a graph with `labels.len()` nodes, node `i` labeled `labels[i]`.
    pub fn new<S, I>(labels: &[S], edges: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let n = labels.len();
        let mut label_names = Vec::new();
        let mut label_lookup = HashMap::new();
        let mut ids = Vec::with_capacity(n);
        for label in labels {
            let label = label.as_ref();
            validate_label(label)?;
            let id = *label_lookup.entry(label.to_string()).or_insert_with(|| {
                label_names.push(label.to_string());
                LabelId(label_names.len() as u32 - 1)
            });
            ids.push(id);
        }

        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::InvalidNode(u));
            }
            if v >= n {
                return Err(Error::InvalidNode(v));
            }
            out[u].push(v);
            inn[v].push(u);
        }
        let mut edge_count = 0;
        for (u, succ) in out.iter_mut().enumerate() {
            succ.sort_unstable();
            if let Some(w) = succ.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u, w[0]));
            }
            edge_count += succ.len();
        }
        for pred in inn.iter_mut() {
            pred.sort_unstable();
        }

        Ok(LabeledDigraph {
            labels: ids,
            label_names,
            label_lookup,
            out,
            inn,
            edge_count,
        })
    }

    /// Graph with no nodes.
    pub fn empty() -> Self {
        LabeledDigraph::new::<&str, _>(&[], []).expect("empty graph is valid")
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.out[v]
    }

    pub fn predecessors(&self, v: NodeId) -> &[NodeId] {
        &self.inn[v]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.label_names[self.labels[v].index()]
    }

    pub fn label_name(&self, id: LabelId) -> &str {
        &self.label_names[id.index()]
    }

    pub fn find_label(&self, name: &str) -> Option<LabelId> {
        self.label_lookup.get(name).copied()
    }

    pub fn label_count(&self) -> usize {
        self.label_names.len()
    }

    /// Distinct label names, indexed by [`LabelId::index`].
    pub fn alphabet(&self) -> &[String] {
        &self.label_names
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.labels.iter().map(|id| self.label_names[id.index()].as_str())
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.labels.len()
    }

    /// Edges in lexicographic `(src, dst)` order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, succ)| succ.iter().map(move |&v| (u, v)))
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.labels.len() {
            Ok(())
        } else {
            Err(Error::InvalidNode(v))
        }
    }
}

impl Adjacency for LabeledDigraph {
    fn node_count(&self) -> usize {
        self.labels.len()
    }

    fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.out[v]
    }

    fn predecessors(&self, v: NodeId) -> &[NodeId] {
        &self.inn[v]
    }

    fn label_id(&self, v: NodeId) -> LabelId {
        self.labels[v]
    }

    fn edge_count(&self) -> usize {
        self.edge_count
    }
}

/// Both directions, each neighbor possibly listed twice (once per edge).
pub(crate) fn undirected_neighbors<G: Adjacency + ?Sized>(
    g: &G,
    v: NodeId,
) -> impl Iterator<Item = NodeId> + '_ {
    g.successors(v)
        .iter()
        .chain(g.predecessors(v).iter())
        .copied()
}

/// Undirected BFS distances from `source`; `None` marks unreachable nodes.
pub fn bfs_distances<G: Adjacency + ?Sized>(g: &G, source: NodeId) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.node_count()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for w in undirected_neighbors(g, u) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Length of the shortest undirected path from `u` to `v`, `None` if there
/// is no such path.
pub fn undirected_distance(g: &LabeledDigraph, u: NodeId, v: NodeId) -> Result<Option<usize>> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Ok(Some(0));
    }
    Ok(bfs_distances(g, u)[v])
}

/// Longest undirected shortest distance over all node pairs. Errors when
/// the graph is disconnected (or has no nodes at all).
pub fn diameter<G: Adjacency + ?Sized>(g: &G) -> Result<usize> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut best = 0;
    for s in 0..g.node_count() {
        for d in bfs_distances(g, s) {
            best = best.max(d.ok_or(Error::NotConnected)?);
        }
    }
    Ok(best)
}

pub fn is_connected<G: Adjacency + ?Sized>(g: &G) -> bool {
    g.node_count() == 0 || bfs_distances(g, 0).iter().all(Option::is_some)
}

/// Maximal undirected-connected blocks, each sorted, ordered by their
/// smallest member.
pub fn connected_components<G: Adjacency + ?Sized>(g: &G) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut block = Vec::new();
        while let Some(u) = stack.pop() {
            block.push(u);
            for w in undirected_neighbors(g, u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Induced subgraph on the connected component containing `v`.
pub fn component_of(g: &LabeledDigraph, v: NodeId) -> Result<Subgraph> {
    g.check_node(v)?;
    let reach: Vec<NodeId> = bfs_distances(g, v)
        .iter()
        .enumerate()
        .filter_map(|(w, d)| d.map(|_| w))
        .collect();
    Ok(Subgraph::induced(g, reach))
}

/// True iff the graph has a directed cycle; self-loops count.
pub fn has_directed_cycle<G: Adjacency + ?Sized>(g: &G) -> bool {
    // Kahn: a cycle leaves some node with positive in-degree forever.
    let n = g.node_count();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.predecessors(v).len()).collect();
    let mut ready: Vec<NodeId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(u) = ready.pop() {
        removed += 1;
        for &w in g.successors(u) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    removed < n
}

/// True iff ignoring directions there is a cycle through at least two
/// distinct edges. An antiparallel pair `u -> v`, `v -> u` is a cycle of
/// length two; self-loops are ignored.
pub fn has_undirected_cycle<G: Adjacency + ?Sized>(g: &G) -> bool {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for u in 0..n {
        for &v in g.successors(u) {
            if u == v {
                continue;
            }
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return true;
            }
            parent[a] = b;
        }
    }
    false
}

/// A subgraph `G[V_s, E_s]` of a host graph, in host node ids. Labels are
/// those of the host; both vectors are kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgraph {
    nodes: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
}

impl Subgraph {
    /// Caller guarantees every edge endpoint is listed in `nodes`.
    pub fn new(mut nodes: Vec<NodeId>, mut edges: Vec<(NodeId, NodeId)>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges
            .iter()
            .all(|(u, v)| nodes.binary_search(u).is_ok() && nodes.binary_search(v).is_ok()));
        Subgraph { nodes, edges }
    }

    /// All host edges over `nodes`.
    pub fn induced<G: Adjacency + ?Sized>(g: &G, nodes: Vec<NodeId>) -> Self {
        let mut nodes = nodes;
        nodes.sort_unstable();
        nodes.dedup();
        let mut edges = Vec::new();
        for &u in &nodes {
            for &v in g.successors(u) {
                if nodes.binary_search(&v).is_ok() {
                    edges.push((u, v));
                }
            }
        }
        Subgraph { nodes, edges }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    /// Node and edge containment.
    pub fn is_subgraph_of(&self, other: &Subgraph) -> bool {
        is_sorted_subset(&self.nodes, &other.nodes) && is_sorted_subset(&self.edges, &other.edges)
    }

    /// Checks `V_s ⊆ V` and `E_s ⊆ E ∩ (V_s × V_s)` against a host.
    pub fn is_valid_in(&self, host: &LabeledDigraph) -> bool {
        self.nodes.iter().all(|&v| v < host.node_count())
            && self.edges.iter().all(|&(u, v)| {
                self.contains_node(u) && self.contains_node(v) && host.has_edge(u, v)
            })
    }
}

pub(crate) fn is_sorted_subset<T: Ord>(small: &[T], large: &[T]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut it = large.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Compact re-indexed copy of part of a host graph. Local node `i`
/// corresponds to host node `nodes[i]`; `nodes` is sorted so the local
/// order follows host ids. Labels keep the host's label ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGraph {
    nodes: Vec<NodeId>,
    labels: Vec<LabelId>,
    out: Vec<Vec<NodeId>>,
    inn: Vec<Vec<NodeId>>,
}

impl LocalGraph {
    /// `nodes` sorted and unique; `edges` in host ids over `nodes`.
    pub(crate) fn from_parts(
        nodes: Vec<NodeId>,
        labels: Vec<LabelId>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        let n = nodes.len();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (u, v) in edges {
            let lu = nodes.binary_search(&u).expect("edge source in node set");
            let lv = nodes.binary_search(&v).expect("edge target in node set");
            out[lu].push(lv);
            inn[lv].push(lu);
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        LocalGraph {
            nodes,
            labels,
            out,
            inn,
        }
    }

    pub fn from_subgraph<G: Adjacency + ?Sized>(host: &G, sub: &Subgraph) -> Self {
        let labels = sub.nodes().iter().map(|&v| host.label_id(v)).collect();
        LocalGraph::from_parts(sub.nodes().to_vec(), labels, sub.edges().iter().copied())
    }

    pub fn global(&self, local: NodeId) -> NodeId {
        self.nodes[local]
    }

    pub fn local(&self, global: NodeId) -> Option<NodeId> {
        self.nodes.binary_search(&global).ok()
    }

    pub fn global_nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn to_subgraph(&self) -> Subgraph {
        let mut edges = Vec::new();
        for (u, succ) in self.out.iter().enumerate() {
            for &v in succ {
                edges.push((self.nodes[u], self.nodes[v]));
            }
        }
        Subgraph {
            nodes: self.nodes.clone(),
            edges,
        }
    }

    /// Standalone graph over local ids `0..n`, labels resolved through the host.
    pub fn to_digraph(&self, host: &LabeledDigraph) -> LabeledDigraph {
        let labels: Vec<&str> = self.labels.iter().map(|&l| host.label_name(l)).collect();
        let edges = self
            .out
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)));
        LabeledDigraph::new(&labels, edges).expect("local graph is well formed")
    }
}

impl Adjacency for LocalGraph {
    fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.out[v]
    }

    fn predecessors(&self, v: NodeId) -> &[NodeId] {
        &self.inn[v]
    }

    fn label_id(&self, v: NodeId) -> LabelId {
        self.labels[v]
    }
}

/// The ball `Ĝ[center, radius]`: every node within undirected distance
/// `radius` of the center, with all host edges over that node set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    center: NodeId,
    radius: usize,
    graph: LocalGraph,
    dist: Vec<usize>,
}

impl Ball {
    pub(crate) fn from_parts(
        center: NodeId,
        radius: usize,
        graph: LocalGraph,
        dist: Vec<usize>,
    ) -> Self {
        Ball {
            center,
            radius,
            graph,
            dist,
        }
    }

    /// Re-expresses a ball built over `outer`'s local ids in `outer`'s
    /// global ids. Order is preserved since `outer` is sorted by global id.
    pub(crate) fn lift(self, outer: &LocalGraph) -> Ball {
        let Ball {
            center,
            radius,
            mut graph,
            dist,
        } = self;
        graph.nodes.iter_mut().for_each(|v| *v = outer.global(*v));
        Ball {
            center: outer.global(center),
            radius,
            graph,
            dist,
        }
    }

    pub fn center(&self) -> NodeId {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Local index of the center within [`Ball::graph`].
    pub fn center_local(&self) -> NodeId {
        self.graph.local(self.center).expect("center is in its ball")
    }

    pub fn graph(&self) -> &LocalGraph {
        &self.graph
    }

    /// Host ids of the ball's nodes, ascending.
    pub fn nodes(&self) -> &[NodeId] {
        self.graph.global_nodes()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.graph.local(v).is_some()
    }

    /// Distance from the center, indexed by local id.
    pub fn local_distance(&self, local: NodeId) -> usize {
        self.dist[local]
    }

    pub fn is_border_local(&self, local: NodeId) -> bool {
        self.dist[local] == self.radius
    }

    /// Local ids of border nodes (distance exactly `radius`).
    pub fn border_local(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.dist.len()).filter(|&l| self.dist[l] == self.radius)
    }

    /// Host ids of border nodes, ascending.
    pub fn border(&self) -> Vec<NodeId> {
        self.border_local().map(|l| self.graph.global(l)).collect()
    }

    pub fn subgraph(&self) -> Subgraph {
        self.graph.to_subgraph()
    }
}

/// Reusable BFS scratch space for building many balls over one host.
pub struct BallBuilder {
    dist: Vec<usize>,
    touched: Vec<NodeId>,
}

impl BallBuilder {
    pub fn new(n: usize) -> Self {
        BallBuilder {
            dist: vec![UNSEEN; n],
            touched: Vec::new(),
        }
    }

    pub fn build<G: Adjacency + ?Sized>(&mut self, g: &G, center: NodeId, radius: usize) -> Ball {
        if self.dist.len() < g.node_count() {
            self.dist.resize(g.node_count(), UNSEEN);
        }
        self.dist[center] = 0;
        self.touched.push(center);
        let mut head = 0;
        while head < self.touched.len() {
            let u = self.touched[head];
            head += 1;
            let d = self.dist[u];
            if d == radius {
                continue;
            }
            for w in undirected_neighbors(g, u) {
                if self.dist[w] == UNSEEN {
                    self.dist[w] = d + 1;
                    self.touched.push(w);
                }
            }
        }

        let mut nodes = self.touched.clone();
        nodes.sort_unstable();
        let n = nodes.len();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut labels = Vec::with_capacity(n);
        let mut dist = Vec::with_capacity(n);
        for (lu, &u) in nodes.iter().enumerate() {
            labels.push(g.label_id(u));
            dist.push(self.dist[u]);
            for &v in g.successors(u) {
                if self.dist[v] != UNSEEN {
                    let lv = nodes.binary_search(&v).unwrap();
                    out[lu].push(lv);
                    inn[lv].push(lu);
                }
            }
        }
        for &v in &self.touched {
            self.dist[v] = UNSEEN;
        }
        self.touched.clear();
        // successors of lu were visited in ascending host order, so `out`
        // is sorted; `inn` entries were pushed in ascending lu order.
        let graph = LocalGraph {
            nodes,
            labels,
            out,
            inn,
        };
        Ball::from_parts(center, radius, graph, dist)
    }
}

/// Builds the ball `Ĝ[center, radius]` with its border marked.
pub fn build_ball(g: &LabeledDigraph, center: NodeId, radius: usize) -> Result<Ball> {
    g.check_node(center)?;
    Ok(BallBuilder::new(g.node_count()).build(g, center, radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> LabeledDigraph {
        LabeledDigraph::new(&["A", "B", "C", "D"], [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn distance_is_undirected() {
        let g = LabeledDigraph::new(&["A", "B"], [(0, 1)]).unwrap();
        assert_eq!(undirected_distance(&g, 0, 1).unwrap(), Some(1));
        assert_eq!(undirected_distance(&g, 1, 0).unwrap(), Some(1));
        assert_eq!(undirected_distance(&g, 1, 1).unwrap(), Some(0));
        assert_eq!(undirected_distance(&path4(), 3, 0).unwrap(), Some(3));
        assert_eq!(undirected_distance(&g, 0, 5), Err(Error::InvalidNode(5)));
    }

    #[test]
    fn unreachable_distance_is_none() {
        let g = LabeledDigraph::new(&["A", "B"], []).unwrap();
        assert_eq!(undirected_distance(&g, 0, 1).unwrap(), None);
    }

    #[test]
    fn diameter_cases() {
        let single = LabeledDigraph::new(&["A"], []).unwrap();
        assert_eq!(diameter(&single).unwrap(), 0);
        let two = LabeledDigraph::new(&["A", "B"], [(0, 1), (1, 0)]).unwrap();
        assert_eq!(diameter(&two).unwrap(), 1);
        assert_eq!(diameter(&path4()).unwrap(), 3);
        let split = LabeledDigraph::new(&["A", "B"], []).unwrap();
        assert_eq!(diameter(&split), Err(Error::NotConnected));
        assert_eq!(diameter(&LabeledDigraph::empty()), Err(Error::EmptyGraph));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            LabeledDigraph::new(&["A", "B"], [(0, 1), (0, 1)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            LabeledDigraph::new(&["A"], [(0, 1)]),
            Err(Error::InvalidNode(1))
        );
        assert!(matches!(
            LabeledDigraph::new(&["A B"], []),
            Err(Error::InvalidLabel(_))
        ));
        assert!(matches!(
            LabeledDigraph::new(&[""], []),
            Err(Error::InvalidLabel(_))
        ));
        let looped = LabeledDigraph::new(&["A"], [(0, 0)]).unwrap();
        assert!(looped.has_edge(0, 0));
    }

    #[test]
    fn reverse_adjacency_is_transpose() {
        let g = LabeledDigraph::new(&["A", "B", "C"], [(2, 0), (0, 1), (0, 2), (1, 1)]).unwrap();
        for u in g.nodes() {
            for &v in g.successors(u) {
                assert!(g.predecessors(v).contains(&u));
            }
            for &v in g.predecessors(u) {
                assert!(g.successors(v).contains(&u));
            }
        }
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 1), (2, 0)]);
    }

    #[test]
    fn components() {
        assert!(connected_components(&LabeledDigraph::empty()).is_empty());
        let iso = LabeledDigraph::new(&["A", "A"], []).unwrap();
        assert_eq!(connected_components(&iso), vec![vec![0], vec![1]]);
        let g = LabeledDigraph::new(&["A", "B", "C", "D"], [(1, 0), (2, 3)]).unwrap();
        assert_eq!(connected_components(&g), vec![vec![0, 1], vec![2, 3]]);
        let c = component_of(&g, 2).unwrap();
        assert_eq!(c.nodes(), &[2, 3]);
        assert_eq!(c.edges(), &[(2, 3)]);
        let lone = component_of(&iso, 1).unwrap();
        assert_eq!(lone.nodes(), &[1]);
        assert_eq!(component_of(&path4(), 0).unwrap().node_count(), 4);
        assert!(component_of(&g, 9).is_err());
    }

    #[test]
    fn directed_cycles() {
        let dag = LabeledDigraph::new(&["A", "B", "C"], [(0, 1), (1, 2)]).unwrap();
        assert!(!has_directed_cycle(&dag));
        let two = LabeledDigraph::new(&["AI", "DM"], [(0, 1), (1, 0)]).unwrap();
        assert!(has_directed_cycle(&two));
        let looped = LabeledDigraph::new(&["A"], [(0, 0)]).unwrap();
        assert!(has_directed_cycle(&looped));
    }

    #[test]
    fn undirected_cycles() {
        let tree = LabeledDigraph::new(&["A", "B", "C", "D"], [(0, 1), (0, 2), (3, 2)]).unwrap();
        assert!(!has_undirected_cycle(&tree));
        let tri = LabeledDigraph::new(&["HR", "SE", "Bio"], [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(has_undirected_cycle(&tri));
        let pair = LabeledDigraph::new(&["P", "P"], [(0, 1), (1, 0)]).unwrap();
        assert!(has_undirected_cycle(&pair));
        let single = LabeledDigraph::new(&["P", "P"], [(0, 1)]).unwrap();
        assert!(!has_undirected_cycle(&single));
        let looped = LabeledDigraph::new(&["A"], [(0, 0)]).unwrap();
        assert!(!has_undirected_cycle(&looped));
    }

    #[test]
    fn ball_radius_zero_keeps_self_loop() {
        let g = LabeledDigraph::new(&["A", "B"], [(0, 0), (0, 1)]).unwrap();
        let ball = build_ball(&g, 0, 0).unwrap();
        assert_eq!(ball.nodes(), &[0]);
        assert_eq!(ball.subgraph().edges(), &[(0, 0)]);
        assert_eq!(ball.border(), vec![0]);
    }

    #[test]
    fn ball_saturates_to_component() {
        let g = LabeledDigraph::new(&["A", "B", "C", "D", "E"], [(0, 1), (2, 1), (3, 4)]).unwrap();
        let ball = build_ball(&g, 0, 10).unwrap();
        assert_eq!(ball.subgraph(), component_of(&g, 0).unwrap());
        assert!(ball.border().is_empty());
        let ball = build_ball(&g, 0, 1).unwrap();
        assert_eq!(ball.nodes(), &[0, 1]);
        assert_eq!(ball.border(), vec![1]);
        assert!(build_ball(&g, 7, 1).is_err());
    }

    #[test]
    fn subset_check() {
        assert!(is_sorted_subset(&[1, 3], &[1, 2, 3]));
        assert!(!is_sorted_subset(&[1, 4], &[1, 2, 3]));
        assert!(is_sorted_subset::<u8>(&[], &[]));
        assert!(!is_sorted_subset(&[0], &[]));
    }
}
