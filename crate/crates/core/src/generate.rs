//! Seeded synthetic graphs and pattern sampling.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{undirected_neighbors, LabeledDigraph, NodeId};
use crate::pattern::Pattern;

/// `n` nodes, `round(n^alpha)` edges, labels drawn from `L0..L{labels-1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorParams {
    pub n: usize,
    pub alpha: f64,
    pub labels: usize,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn new(n: usize, alpha: f64, labels: usize, seed: u64) -> Self {
        GeneratorParams {
            n,
            alpha,
            labels,
            seed,
        }
    }

    pub fn edge_count(&self) -> usize {
        (self.n as f64).powf(self.alpha).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Parameter("n must be at least 1".into()));
        }
        if !(self.alpha >= 1.0) || !self.alpha.is_finite() {
            return Err(Error::Parameter(format!("alpha must be >= 1.0, got {}", self.alpha)));
        }
        if self.labels < 1 {
            return Err(Error::Parameter("label count must be at least 1".into()));
        }
        let m = self.edge_count();
        let max = self.n * (self.n - 1);
        if m > max {
            return Err(Error::Parameter(format!(
                "{m} edges requested but only {max} ordered pairs exist for n = {}",
                self.n
            )));
        }
        Ok(())
    }
}

pub fn label_name(i: usize) -> String {
    format!("L{i}")
}

/// Uniform sample of `round(n^alpha)` distinct non-loop edges.
pub fn generate(params: &GeneratorParams) -> Result<LabeledDigraph> {
    params.validate()?;
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let labels: Vec<String> = (0..n)
        .map(|_| label_name(rng.gen_range(0..params.labels)))
        .collect();
    let m = params.edge_count();
    let edges = if m == 0 {
        Vec::new()
    } else {
        // Pair index k encodes source k / (n-1) and the k % (n-1)-th other node.
        sample(&mut rng, n * (n - 1), m)
            .into_iter()
            .map(|k| {
                let u = k / (n - 1);
                let r = k % (n - 1);
                (u, if r < u { r } else { r + 1 })
            })
            .collect()
    };
    LabeledDigraph::new(&labels, edges)
}

/// A connected pattern grown from a random node of `g`: up to `size` nodes
/// picked by random undirected expansion, with all edges of `g` among them.
/// Node order follows discovery order. `None` if `g` is empty.
pub fn sample_pattern(g: &LabeledDigraph, size: usize, seed: u64) -> Option<Pattern> {
    if g.node_count() == 0 || size == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = rng.gen_range(0..g.node_count());
    let mut picked = vec![start];
    let mut frontier: Vec<NodeId> = Vec::new();
    let mut in_set = std::collections::HashSet::from([start]);
    frontier.extend(undirected_neighbors(g, start));
    while picked.len() < size {
        frontier.retain(|v| !in_set.contains(v));
        if frontier.is_empty() {
            break;
        }
        let v = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        in_set.insert(v);
        picked.push(v);
        frontier.extend(undirected_neighbors(g, v));
    }
    let index = |v: NodeId| picked.iter().position(|&p| p == v);
    let labels: Vec<&str> = picked.iter().map(|&v| g.label(v)).collect();
    let edges: Vec<(NodeId, NodeId)> = picked
        .iter()
        .enumerate()
        .flat_map(|(i, &v)| {
            g.successors(v)
                .iter()
                .filter_map(move |&w| index(w).map(|j| (i, j)))
                .collect::<Vec<_>>()
        })
        .collect();
    let graph = LabeledDigraph::new(&labels, edges).expect("induced subgraph is well formed");
    Some(Pattern::new(graph).expect("grown by undirected expansion"))
}

/// A random connected pattern over labels `L0..L{labels-1}`: a random
/// spanning tree with random orientations plus `extra` further edges
/// (self-loops excluded).
pub fn random_pattern(nodes: usize, extra: usize, labels: usize, seed: u64) -> Result<Pattern> {
    if nodes < 1 || labels < 1 {
        return Err(Error::Parameter("pattern needs at least one node and one label".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..nodes)
        .map(|_| label_name(rng.gen_range(0..labels)))
        .collect();
    let mut edges = std::collections::BTreeSet::new();
    for v in 1..nodes {
        let u = rng.gen_range(0..v);
        edges.insert(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
    }
    let max = nodes * (nodes - 1);
    let target = (edges.len() + extra).min(max);
    while edges.len() < target {
        let u = rng.gen_range(0..nodes);
        let v = rng.gen_range(0..nodes);
        if u != v {
            edges.insert((u, v));
        }
    }
    Pattern::new(LabeledDigraph::new(&names, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_connected;

    #[test]
    fn degenerate_single_node_is_rejected() {
        let err = generate(&GeneratorParams::new(1, 1.0, 1, 0)).unwrap_err();
        assert!(matches!(err, Error::Parameter(_)));
    }

    #[test]
    fn parameter_checks() {
        assert!(generate(&GeneratorParams::new(0, 1.2, 2, 0)).is_err());
        assert!(generate(&GeneratorParams::new(10, 0.9, 2, 0)).is_err());
        assert!(generate(&GeneratorParams::new(10, 1.2, 0, 0)).is_err());
        assert!(generate(&GeneratorParams::new(10, f64::NAN, 2, 0)).is_err());
        // 3^2 = 9 > 6 ordered pairs
        assert!(generate(&GeneratorParams::new(3, 2.0, 2, 0)).is_err());
    }

    #[test]
    fn small_instance_is_deterministic() {
        let p = GeneratorParams::new(10, 1.2, 2, 7);
        let a = generate(&p).unwrap();
        let b = generate(&p).unwrap();
        assert_eq!(a.node_count(), 10);
        assert_eq!(a.edge_count(), 16);
        assert_eq!(a, b);
        assert!(a.edges().all(|(u, v)| u != v));
        assert!(a.labels().all(|l| l == "L0" || l == "L1"));
        assert_ne!(a, generate(&GeneratorParams::new(10, 1.2, 2, 8)).unwrap());
    }

    #[test]
    fn complete_graph_at_the_bound() {
        // alpha = log_4(12) asks for all 12 ordered pairs.
        let alpha = 12f64.ln() / 4f64.ln();
        let g = generate(&GeneratorParams::new(4, alpha, 1, 3)).unwrap();
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn sampled_patterns_are_connected_and_label_preserving() {
        let g = generate(&GeneratorParams::new(200, 1.2, 5, 11)).unwrap();
        for seed in 0..20 {
            let q = sample_pattern(&g, 6, seed).unwrap();
            assert!(q.node_count() <= 6);
            assert!(is_connected(q.graph()));
        }
        assert!(sample_pattern(&LabeledDigraph::empty(), 3, 0).is_none());
    }

    #[test]
    fn random_patterns_are_connected() {
        for seed in 0..50 {
            let q = random_pattern(1 + seed as usize % 8, 3, 3, seed).unwrap();
            assert!(is_connected(q.graph()));
            assert!(q.edges().all(|(u, v)| u != v));
        }
    }
}
