//! Shared workloads for the benchmarks.

use gpm_core::generate::sample_pattern;
use gpm_core::{generate, GeneratorParams, LabeledDigraph, Pattern};

/// A generated data graph and a pattern sampled from it, so the pattern
/// has at least one match.
pub fn workload(n: usize, alpha: f64, labels: usize, pattern_nodes: usize, seed: u64) -> (Pattern, LabeledDigraph) {
    let g = generate(&GeneratorParams::new(n, alpha, labels, seed)).expect("valid generator parameters");
    let q = (seed..)
        .filter_map(|s| sample_pattern(&g, pattern_nodes, s))
        .find(|q| q.node_count() == pattern_nodes)
        .expect("generated graph has a large enough component");
    (q, g)
}
