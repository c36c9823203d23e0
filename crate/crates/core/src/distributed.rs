//! Edge-cut fragmentation and an in-process simulation of distributed strong
//! simulation: sites assemble the balls that cross their fragment boundary
//! by frontier exchange, evaluate balls around the nodes they own and send
//! partial results to a coordinator.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use log::debug;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Adjacency, Ball, BallBuilder, LabelId, LabeledDigraph, LocalGraph, NodeId};
use crate::pattern::Pattern;
use crate::simulation::{graph_sim, match_graph};
use crate::strong::{evaluate_ball, MatchResult};

/// Edge with exactly one endpoint owned by the fragment holding it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CrossEdge {
    pub src: NodeId,
    pub dst: NodeId,
    pub foreign: NodeId,
    pub foreign_label: String,
    pub foreign_site: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub site: usize,
    /// Owned nodes, ascending host ids.
    pub nodes: Vec<NodeId>,
    /// Labels of `nodes`, same order.
    pub labels: Vec<String>,
    /// Edges between owned nodes, sorted.
    pub edges: Vec<(NodeId, NodeId)>,
    /// Edges to or from other sites, sorted by `(src, dst)`.
    pub cross: Vec<CrossEdge>,
}

impl Fragment {
    /// Owned part as a standalone graph with local ids `0..nodes.len()`.
    pub fn to_digraph(&self) -> LabeledDigraph {
        let local = |v: NodeId| self.nodes.binary_search(&v).expect("owned node");
        LabeledDigraph::new(
            &self.labels,
            self.edges.iter().map(|&(s, t)| (local(s), local(t))),
        )
        .expect("fragment is well formed")
    }
}

/// A data graph split over `k` sites. Every node has one owner; an edge
/// between sites is recorded in both endpoint fragments and belongs to the
/// site of its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentedGraph {
    k: usize,
    owner: Vec<usize>,
    fragments: Vec<Fragment>,
    /// Shared label dictionary, indexed like the host's label ids.
    alphabet: Vec<String>,
}

impl FragmentedGraph {
    /// Seeded random assignment: nodes are shuffled and dealt to sites in
    /// turn, so every site owns at least one node.
    pub fn partition(g: &LabeledDigraph, k: usize, seed: u64) -> Result<Self> {
        Self::check_k(g, k)?;
        let mut order: Vec<NodeId> = g.nodes().collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut owner = vec![0; g.node_count()];
        for (i, &v) in order.iter().enumerate() {
            owner[v] = i % k;
        }
        Self::from_owners(g, k, owner)
    }

    fn check_k(g: &LabeledDigraph, k: usize) -> Result<()> {
        if k < 1 || k > g.node_count() {
            return Err(Error::Parameter(format!(
                "site count must be in 1..={}, got {k}",
                g.node_count()
            )));
        }
        Ok(())
    }

    /// Explicit assignment; `owner[v]` is the site of node `v`.
    pub fn from_owners(g: &LabeledDigraph, k: usize, owner: Vec<usize>) -> Result<Self> {
        Self::check_k(g, k)?;
        if owner.len() != g.node_count() {
            return Err(Error::Parameter(format!(
                "{} owners given for {} nodes",
                owner.len(),
                g.node_count()
            )));
        }
        if let Some(&bad) = owner.iter().find(|&&s| s >= k) {
            return Err(Error::Parameter(format!("site {bad} out of range for k = {k}")));
        }
        let mut fragments: Vec<Fragment> = (0..k)
            .map(|site| Fragment {
                site,
                nodes: Vec::new(),
                labels: Vec::new(),
                edges: Vec::new(),
                cross: Vec::new(),
            })
            .collect();
        for v in g.nodes() {
            let f = &mut fragments[owner[v]];
            f.nodes.push(v);
            f.labels.push(g.label(v).to_string());
        }
        for (s, t) in g.edges() {
            let (os, ot) = (owner[s], owner[t]);
            if os == ot {
                fragments[os].edges.push((s, t));
            } else {
                fragments[os].cross.push(CrossEdge {
                    src: s,
                    dst: t,
                    foreign: t,
                    foreign_label: g.label(t).to_string(),
                    foreign_site: ot,
                });
                fragments[ot].cross.push(CrossEdge {
                    src: s,
                    dst: t,
                    foreign: s,
                    foreign_label: g.label(s).to_string(),
                    foreign_site: os,
                });
            }
        }
        for f in &mut fragments {
            f.cross.sort();
        }
        Ok(FragmentedGraph {
            k,
            owner,
            fragments,
            alphabet: g.alphabet().to_vec(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn owner(&self, v: NodeId) -> usize {
        self.owner[v]
    }

    pub fn owners(&self) -> &[usize] {
        &self.owner
    }

    pub fn fragments(&self) -> &[Fragment] {
        &self.fragments
    }

    pub fn node_count(&self) -> usize {
        self.owner.len()
    }

    /// Rebuilds the data graph from local edges and source-owned cross edges.
    pub fn reassemble(&self) -> LabeledDigraph {
        let mut labels = vec![""; self.node_count()];
        let mut edges = Vec::new();
        for f in &self.fragments {
            for (&v, l) in f.nodes.iter().zip(&f.labels) {
                labels[v] = l;
            }
            edges.extend(f.edges.iter().copied());
            edges.extend(
                f.cross
                    .iter()
                    .filter(|c| self.owner[c.src] == f.site)
                    .map(|c| (c.src, c.dst)),
            );
        }
        LabeledDigraph::new(&labels, edges).expect("fragments partition a valid graph")
    }

    fn label_id(&self, name: &str) -> LabelId {
        let i = self
            .alphabet
            .iter()
            .position(|a| a == name)
            .expect("label from the shared dictionary");
        LabelId(i as u32)
    }

    /// Owned nodes with a direct neighbor at another site.
    pub fn border_centers(&self, site: usize) -> Vec<NodeId> {
        let f = &self.fragments[site];
        let mut centers: Vec<NodeId> = f
            .cross
            .iter()
            .map(|c| if c.foreign == c.src { c.dst } else { c.src })
            .collect();
        centers.sort_unstable();
        centers.dedup();
        centers
    }
}

/// Shipment counters for one direction between two sites.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Traffic {
    /// Ball assemblies this direction contributed data to.
    pub balls: usize,
    pub messages: usize,
    /// Node records shipped.
    pub nodes: usize,
    /// Edge records shipped.
    pub edges: usize,
    pub bytes: usize,
}

impl Traffic {
    fn add(&mut self, other: &Traffic) {
        self.balls += other.balls;
        self.messages += other.messages;
        self.nodes += other.nodes;
        self.edges += other.edges;
        self.bytes += other.bytes;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrafficLedger {
    entries: BTreeMap<(usize, usize), Traffic>,
    /// `(from, to, center)` triples already counted in `balls`.
    ball_keys: BTreeSet<(usize, usize, NodeId)>,
}

impl TrafficLedger {
    pub fn get(&self, from: usize, to: usize) -> Traffic {
        self.entries.get(&(from, to)).copied().unwrap_or_default()
    }

    /// `((from, to), traffic)` in ascending site order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Traffic)> {
        self.entries.iter()
    }

    pub fn total(&self) -> Traffic {
        let mut t = Traffic::default();
        for e in self.entries.values() {
            t.add(e);
        }
        t
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn record(&mut self, msg: &Message, nodes: usize, edges: usize) {
        let e = self.entries.entry((msg.from, msg.to)).or_default();
        e.messages += 1;
        e.bytes += msg.body.len();
        e.nodes += nodes;
        e.edges += edges;
        if nodes + edges > 0 && self.ball_keys.insert((msg.from, msg.to, msg.center)) {
            e.balls += 1;
        }
    }
}

impl fmt::Display for TrafficLedger {
    /// `traffic <from> <to> <balls> <nodes> <edges>` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(from, to), t) in &self.entries {
            writeln!(f, "traffic {from} {to} {} {} {}", t.balls, t.nodes, t.edges)?;
        }
        Ok(())
    }
}

/// A serialized message between two sites about the ball around `center`.
struct Message {
    from: usize,
    to: usize,
    center: NodeId,
    body: String,
}

/// What a site knows about its own fragment, indexed for lookups.
struct SiteIndex {
    site: usize,
    out: HashMap<NodeId, Vec<NodeId>>,
    inn: HashMap<NodeId, Vec<NodeId>>,
    labels: HashMap<NodeId, String>,
    /// Sites of foreign endpoints of cross edges.
    foreign_site: HashMap<NodeId, usize>,
}

impl SiteIndex {
    fn new(f: &Fragment) -> Self {
        let mut out: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
        let mut inn: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
        let mut labels = HashMap::new();
        let mut foreign_site = HashMap::new();
        for (&v, l) in f.nodes.iter().zip(&f.labels) {
            labels.insert(v, l.clone());
            out.insert(v, Vec::new());
            inn.insert(v, Vec::new());
        }
        for &(s, t) in &f.edges {
            out.get_mut(&s).unwrap().push(t);
            inn.get_mut(&t).unwrap().push(s);
        }
        for c in &f.cross {
            if c.foreign == c.dst {
                out.get_mut(&c.src).unwrap().push(c.dst);
            } else {
                inn.get_mut(&c.dst).unwrap().push(c.src);
            }
            labels.entry(c.foreign).or_insert_with(|| c.foreign_label.clone());
            foreign_site.insert(c.foreign, c.foreign_site);
        }
        for list in out.values_mut().chain(inn.values_mut()) {
            list.sort_unstable();
        }
        SiteIndex {
            site: f.site,
            out,
            inn,
            labels,
            foreign_site,
        }
    }

    fn owns(&self, v: NodeId) -> bool {
        self.out.contains_key(&v)
    }

    fn site_of(&self, v: NodeId) -> usize {
        if self.owns(v) {
            self.site
        } else {
            self.foreign_site[&v]
        }
    }

    /// Answers a request for owned nodes.
    ///
    /// ```text
    /// req <center> expand|close     x <id> ...     k <id> ...
    /// resp <center>                 v <id> <label>  e <s> <t>  o <id> <site>
    /// ```
    /// `expand` ships every edge at the requested nodes plus the sites of
    /// their neighbors; `close` ships only out-edges into the `k` set.
    fn respond(&self, req: &Message) -> (Message, usize, usize) {
        let mut lines = req.body.lines();
        let header: Vec<&str> = lines.next().unwrap_or_default().split_whitespace().collect();
        let close = header.get(2) == Some(&"close");
        let mut expand = Vec::new();
        let mut known = BTreeSet::new();
        for line in lines {
            let mut t = line.split_whitespace();
            let kind = t.next();
            let id: NodeId = t.next().and_then(|x| x.parse().ok()).expect("well-formed request");
            match kind {
                Some("x") => expand.push(id),
                _ => {
                    known.insert(id);
                }
            }
        }

        let mut body = String::new();
        writeln!(body, "resp {}", req.center).unwrap();
        let (mut nodes, mut edges) = (0, 0);
        let mut edge_set = BTreeSet::new();
        let mut hints = BTreeSet::new();
        for &x in &expand {
            writeln!(body, "v {x} {}", self.labels[&x]).unwrap();
            nodes += 1;
            for &w in &self.out[&x] {
                if !close || known.contains(&w) {
                    edge_set.insert((x, w));
                    hints.insert(w);
                }
            }
            if !close {
                for &w in &self.inn[&x] {
                    edge_set.insert((w, x));
                    hints.insert(w);
                }
            }
        }
        for &(s, t) in &edge_set {
            writeln!(body, "e {s} {t}").unwrap();
            edges += 1;
        }
        if !close {
            for &w in &hints {
                writeln!(body, "o {w} {}", self.site_of(w)).unwrap();
            }
        }
        let msg = Message {
            from: self.site,
            to: req.from,
            center: req.center,
            body,
        };
        (msg, nodes, edges)
    }
}

/// Partial view of one ball being assembled at its center's site.
struct Assembly {
    center: NodeId,
    dist: BTreeMap<NodeId, usize>,
    site_of: HashMap<NodeId, usize>,
    labels: HashMap<NodeId, String>,
    edges: BTreeSet<(NodeId, NodeId)>,
}

impl Assembly {
    fn discover(&mut self, v: NodeId, depth: usize) {
        self.dist.entry(v).or_insert(depth);
    }

    fn at_depth(&self, d: usize) -> impl Iterator<Item = NodeId> + '_ {
        self.dist.iter().filter(move |(_, &x)| x == d).map(|(&v, _)| v)
    }

    fn expand_local(&mut self, idx: &SiteIndex, x: NodeId, close: bool) {
        let depth = self.dist[&x];
        self.labels.insert(x, idx.labels[&x].clone());
        for &w in &idx.out[&x] {
            if !close || self.dist.contains_key(&w) {
                self.edges.insert((x, w));
                self.site_of.insert(w, idx.site_of(w));
                self.discover(w, depth + 1);
            }
        }
        if !close {
            for &w in &idx.inn[&x] {
                self.edges.insert((w, x));
                self.site_of.insert(w, idx.site_of(w));
                self.discover(w, depth + 1);
            }
        }
    }

    fn apply_response(&mut self, body: &str, depth: usize) {
        for line in body.lines().skip(1) {
            let t: Vec<&str> = line.split_whitespace().collect();
            let num = |i: usize| -> NodeId { t[i].parse().expect("well-formed response") };
            match t[0] {
                "v" => {
                    self.labels.insert(num(1), t[2].to_string());
                }
                "e" => {
                    let (s, d) = (num(1), num(2));
                    self.edges.insert((s, d));
                    for v in [s, d] {
                        self.discover(v, depth + 1);
                    }
                }
                "o" => {
                    self.site_of.insert(num(1), num(2));
                }
                _ => unreachable!("unknown response record"),
            }
        }
    }

    fn request(&self, from: usize, to: usize, nodes: &[NodeId], close: bool) -> Message {
        let mut body = String::new();
        let mode = if close { "close" } else { "expand" };
        writeln!(body, "req {} {mode}", self.center).unwrap();
        for x in nodes {
            writeln!(body, "x {x}").unwrap();
        }
        if close {
            for v in self.dist.keys() {
                writeln!(body, "k {v}").unwrap();
            }
        }
        Message {
            from,
            to,
            center: self.center,
            body,
        }
    }

    fn into_ball(self, f: &FragmentedGraph, radius: usize) -> Ball {
        let nodes: Vec<NodeId> = self.dist.keys().copied().collect();
        let labels = nodes.iter().map(|v| f.label_id(&self.labels[v])).collect();
        let dist = self.dist.values().copied().collect();
        let graph = LocalGraph::from_parts(nodes, labels, self.edges);
        Ball::from_parts(self.center, radius, graph, dist)
    }
}

/// Frontier exchange for the border centers of every site. Returns the
/// assembled balls per site, ascending by center, and the traffic.
///
/// Round `t` (1..=radius) asks the owners of the depth-`t` foreign nodes
/// to expand them (`t < radius`) or to close the ball (`t = radius`), so
/// every foreign ball node is shipped once, by its owner.
pub fn assemble_border_balls(f: &FragmentedGraph, radius: usize) -> (Vec<Vec<Ball>>, TrafficLedger) {
    let index: Vec<SiteIndex> = f.fragments.iter().map(SiteIndex::new).collect();
    let mut ledger = TrafficLedger::default();
    let mut assemblies: Vec<Vec<Assembly>> = (0..f.k)
        .map(|site| {
            f.border_centers(site)
                .into_iter()
                .map(|c| Assembly {
                    center: c,
                    dist: BTreeMap::from([(c, 0)]),
                    site_of: HashMap::from([(c, site)]),
                    labels: HashMap::new(),
                    edges: BTreeSet::new(),
                })
                .collect()
        })
        .collect();

    for depth in 0..=radius {
        let close = depth == radius;
        // Local work first, then one barrier round of requests and replies.
        let mut outbox: Vec<(usize, usize, Message)> = Vec::new();
        for (site, list) in assemblies.iter_mut().enumerate() {
            for (ai, a) in list.iter_mut().enumerate() {
                let frontier: Vec<NodeId> = a.at_depth(depth).collect();
                let mut remote: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
                for x in frontier {
                    if index[site].owns(x) {
                        a.expand_local(&index[site], x, close);
                    } else {
                        remote.entry(a.site_of[&x]).or_default().push(x);
                    }
                }
                for (to, nodes) in remote {
                    outbox.push((site, ai, a.request(site, to, &nodes, close)));
                }
            }
        }
        for (site, ai, req) in outbox {
            ledger.record(&req, 0, 0);
            let (resp, nodes, edges) = index[req.to].respond(&req);
            ledger.record(&resp, nodes, edges);
            assemblies[site][ai].apply_response(&resp.body, depth);
        }
    }

    // Close responses can only mention known nodes, so nothing past the radius.
    let balls = assemblies
        .into_iter()
        .map(|list| list.into_iter().map(|a| a.into_ball(f, radius)).collect())
        .collect();
    (balls, ledger)
}

/// Everything one site ends up knowing: its fragment plus the assembled
/// border balls.
fn site_view(f: &FragmentedGraph, site: usize, balls: &[Ball]) -> LocalGraph {
    let frag = &f.fragments[site];
    let mut labels: BTreeMap<NodeId, LabelId> = BTreeMap::new();
    let mut edges: BTreeSet<(NodeId, NodeId)> = frag.edges.iter().copied().collect();
    for (&v, l) in frag.nodes.iter().zip(&frag.labels) {
        labels.insert(v, f.label_id(l));
    }
    for c in &frag.cross {
        labels.insert(c.foreign, f.label_id(&c.foreign_label));
        edges.insert((c.src, c.dst));
    }
    for b in balls {
        let g = b.graph();
        for l in 0..g.node_count() {
            labels.insert(g.global(l), g.label_id(l));
            for &w in g.successors(l) {
                edges.insert((g.global(l), g.global(w)));
            }
        }
    }
    let nodes = labels.keys().copied().collect();
    LocalGraph::from_parts(nodes, labels.into_values().collect(), edges)
}

/// Distributed strong simulation. Each site evaluates the balls of its own
/// nodes, border balls through frontier exchange and the rest locally; the
/// coordinator takes the union of the partial results.
pub fn distributed_match(q: &Pattern, f: &FragmentedGraph) -> (MatchResult, TrafficLedger) {
    let radius = q.diameter();
    let resolved: Vec<Option<LabelId>> = q
        .labels()
        .map(|l| f.alphabet.iter().position(|a| a == l).map(|i| LabelId(i as u32)))
        .collect();

    let (border_balls, ledger) = assemble_border_balls(f, radius);
    let mut found = Vec::new();
    for (site, balls) in border_balls.iter().enumerate() {
        let view = site_view(f, site, balls);
        let mut builder = BallBuilder::new(view.node_count());
        let mut partial = Vec::new();
        for &w in &f.fragments[site].nodes {
            let ball = match balls.binary_search_by_key(&w, Ball::center) {
                Ok(i) => balls[i].clone(),
                Err(_) => {
                    let local = view.local(w).expect("owned node is in the site view");
                    builder.build(&view, local, radius).lift(&view)
                }
            };
            partial.extend(evaluate_ball(q.graph(), &ball, &resolved));
        }
        debug!(
            "site {site}: {} owned nodes, {} border balls, {} partial matches",
            f.fragments[site].nodes.len(),
            balls.len(),
            partial.len()
        );
        // Partial results travel to the coordinator; they are not counted
        // as graph data shipment.
        found.extend(partial);
    }
    (MatchResult::from_perfect_subgraphs(found), ledger)
}

/// Shipment plain graph simulation would need: the whole match graph must
/// meet at one site, so everything outside the best-placed site moves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColocationCost {
    pub nodes: usize,
    pub edges: usize,
}

pub fn simulation_colocation_cost(q: &Pattern, f: &FragmentedGraph) -> ColocationCost {
    let g = f.reassemble();
    let s = graph_sim(q, &g);
    let mg = match_graph(q.graph(), &g, &s);
    if mg.is_empty() {
        return ColocationCost::default();
    }
    (0..f.k)
        .map(|site| ColocationCost {
            nodes: mg.nodes().iter().filter(|&&v| f.owner[v] != site).count(),
            edges: mg
                .edges()
                .iter()
                .filter(|&&(a, b)| f.owner[a] != site || f.owner[b] != site)
                .count(),
        })
        .min_by_key(|c| (c.nodes, c.edges))
        .unwrap_or_default()
}
