//! Graph pattern matching by graph simulation, dual simulation and strong
//! simulation, with query minimization, ball filtering, a distributed
//! evaluator and a subgraph isomorphism oracle for quality comparisons.

pub mod distributed;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod iso;
pub mod optimize;
pub mod pattern;
pub mod simulation;
pub mod strong;

pub use distributed::{distributed_match, FragmentedGraph, TrafficLedger};
pub use error::{Error, Result};
pub use generate::{generate, GeneratorParams};
pub use graph::{build_ball, diameter, Adjacency, Ball, LabeledDigraph, NodeId, Subgraph};
pub use io::{format_match_result, parse_graph, serialize_graph};
pub use iso::{closeness, quality_report, subgraph_iso_all, Algorithm, IsoMatch, QualityReport};
pub use optimize::{dual_filter, match_plus, min_q, MinimizedPattern};
pub use pattern::Pattern;
pub use simulation::{dual_sim, graph_sim, match_graph, MatchRelation};
pub use strong::{match_strong, matched_nodes, MatchOptions, MatchResult, PerfectSubgraph};
