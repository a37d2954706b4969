//! Weighted undirected graphs and their cut functions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::function::SetFunction;
use crate::subset::Subset;
use crate::{Error, Result};

/// An undirected edge `{u, v}` with weight `w`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// A simple undirected graph with real edge weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    node_count: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Validates indices, rejects self-loops and repeated unordered pairs.
    pub fn new(node_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidGraph("graph must have at least one node".into()));
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if e.u >= node_count || e.v >= node_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) references a node outside 0..{node_count}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!("self-loop at node {}", e.u)));
            }
            if !e.w.is_finite() {
                return Err(Error::InvalidGraph(format!("edge ({}, {}) has weight {}", e.u, e.v, e.w)));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", e.u, e.v)));
            }
        }
        Ok(Self { node_count, edges })
    }

    pub fn from_triples(node_count: usize, triples: &[(usize, usize, f64)]) -> Result<Self> {
        Self::new(
            node_count,
            triples.iter().map(|&(u, v, w)| Edge { u, v, w }).collect(),
        )
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().fold(0.0, |acc, e| acc + e.w)
    }
}

/// Total weight of the edges with exactly one endpoint in `s`.
pub fn cut_value(g: &WeightedGraph, s: &Subset) -> Result<f64> {
    if s.ground_size() != g.node_count {
        return Err(Error::GroundMismatch {
            expected: g.node_count,
            found: s.ground_size(),
        });
    }
    Ok(cut_of(g, |i| s.contains(i)))
}

// Folding from +0.0 keeps the empty cut at +0.0 rather than -0.0.
fn cut_of(g: &WeightedGraph, inside: impl Fn(usize) -> bool) -> f64 {
    g.edges
        .iter()
        .filter(|e| inside(e.u) != inside(e.v))
        .fold(0.0, |acc, e| acc + e.w)
}

/// `cut_G(S)` as a set function over the nodes of `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct CutFunction {
    graph: WeightedGraph,
}

impl CutFunction {
    pub fn new(graph: WeightedGraph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }
}

impl SetFunction for CutFunction {
    fn ground_size(&self) -> usize {
        self.graph.node_count
    }

    fn value(&self, s: &Subset) -> f64 {
        cut_of(&self.graph, |i| s.contains(i))
    }

    fn value_mask(&self, mask: u64) -> f64 {
        cut_of(&self.graph, |i| mask >> i & 1 == 1)
    }
}
