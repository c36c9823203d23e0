use std::ops::Deref;

use crate::error::{Error, Result};
use crate::graph::{diameter, LabelId, LabeledDigraph};

/// A connected pattern graph `Q` together with its diameter `d_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    graph: LabeledDigraph,
    diameter: usize,
}

impl Pattern {
    /// Fails with [`Error::NotConnected`] or [`Error::EmptyGraph`].
    pub fn new(graph: LabeledDigraph) -> Result<Self> {
        let diameter = diameter(&graph)?;
        Ok(Pattern { graph, diameter })
    }

    pub fn graph(&self) -> &LabeledDigraph {
        &self.graph
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn into_graph(self) -> LabeledDigraph {
        self.graph
    }

    /// Pattern node labels translated into `host`'s label ids; `None` when
    /// the host has no node with that label.
    pub fn resolve_labels(&self, host: &LabeledDigraph) -> Vec<Option<LabelId>> {
        self.graph.labels().map(|l| host.find_label(l)).collect()
    }
}

impl Deref for Pattern {
    type Target = LabeledDigraph;

    fn deref(&self) -> &LabeledDigraph {
        &self.graph
    }
}

impl TryFrom<LabeledDigraph> for Pattern {
    type Error = Error;

    fn try_from(graph: LabeledDigraph) -> Result<Self> {
        Pattern::new(graph)
    }
}
