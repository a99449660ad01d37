//! Shared data model: node-labeled directed graphs, token patterns and
//! bit-vector sets.
//!
//! Labels are alphabet tokens: non-empty UTF-8 strings without whitespace.
//! Graphs are immutable once built. [`LabeledGraph::from_parts`] accepts
//! arbitrary (possibly broken) data so that [`validate_graph`] has something
//! to diagnose; every analysis that needs a well-formed graph goes through
//! [`LabeledGraph::ensure_valid`].

use std::collections::HashSet;
use std::fmt;

use petgraph::graph::DiGraph;
use petgraph::visit::{depth_first_search, DfsEvent};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Tokens of the binary reduction alphabet.
pub const TOKEN_BEGIN: &str = "B";
pub const TOKEN_END: &str = "E";
pub const TOKEN_ZERO: &str = "0";
pub const TOKEN_ONE: &str = "1";

/// True if `token` is a legal alphabet token.
pub fn is_valid_token(token: &str) -> bool {
    !token.is_empty() && !token.chars().any(char::is_whitespace)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    labels: Vec<String>,
    edges: Vec<(NodeId, NodeId)>,
}

impl LabeledGraph {
    /// Builds a graph and rejects it if any invariant is violated.
    pub fn new(labels: Vec<String>, edges: Vec<(NodeId, NodeId)>) -> Result<Self> {
        let g = Self::from_parts(labels, edges);
        g.ensure_valid()?;
        Ok(g)
    }

    /// Builds a graph without checking invariants.
    pub fn from_parts(labels: Vec<String>, edges: Vec<(NodeId, NodeId)>) -> Self {
        Self { labels, edges }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match validate_graph(self).into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidGraph(v.to_string())),
        }
    }

    /// Out-neighbour lists, in edge order.
    pub fn successors(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.node_count()];
        for &(u, v) in &self.edges {
            out[u].push(v);
        }
        out
    }

    fn to_petgraph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::with_capacity(self.node_count(), self.edge_count());
        for _ in 0..self.node_count() {
            g.add_node(());
        }
        for &(u, v) in &self.edges {
            g.add_edge((u as u32).into(), (v as u32).into(), ());
        }
        g
    }
}

/// Incremental constructor that hands out dense ids in insertion order.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    edges: Vec<(NodeId, NodeId)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, token: impl Into<String>) -> NodeId {
        self.labels.push(token.into());
        self.labels.len() - 1
    }

    pub fn add_edge(&mut self, src: NodeId, dst: NodeId) {
        self.edges.push((src, dst));
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn finish(self) -> LabeledGraph {
        LabeledGraph::from_parts(self.labels, self.edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Pattern {
    tokens: Vec<String>,
}

impl Pattern {
    pub fn new<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            tokens: tokens.into_iter().map(Into::into).collect(),
        }
    }

    /// Splits `text` on whitespace.
    pub fn from_words(text: &str) -> Self {
        Self::new(text.split_whitespace())
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: Vec<bool>,
}

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![false; dim])
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    pub fn dim(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, h: usize) -> bool {
        self.bits[h]
    }

    /// Integer dot product. Both vectors must share a dimension.
    pub fn dot(&self, other: &BitVector) -> usize {
        debug_assert_eq!(self.dim(), other.dim());
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| **a && **b)
            .count()
    }

    pub fn is_orthogonal(&self, other: &BitVector) -> bool {
        self.dot(other) == 0
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Two sets of `dim`-dimensional bit vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OvInstance {
    x: Vec<BitVector>,
    y: Vec<BitVector>,
    dim: usize,
}

impl OvInstance {
    pub fn new(x: Vec<BitVector>, y: Vec<BitVector>, dim: usize) -> Result<Self> {
        if let Some(v) = x.iter().chain(&y).find(|v| v.dim() != dim) {
            return Err(Error::arg(format!(
                "vector of dimension {} in an instance of dimension {dim}",
                v.dim()
            )));
        }
        Ok(Self { x, y, dim })
    }

    pub fn x(&self) -> &[BitVector] {
        &self.x
    }

    pub fn y(&self) -> &[BitVector] {
        &self.y
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DanglingEndpoint {
        edge: usize,
        node: NodeId,
    },
    DuplicateEdge {
        edge: usize,
        src: NodeId,
        dst: NodeId,
    },
    InvalidToken {
        node: NodeId,
        token: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingEndpoint { edge, node } => {
                write!(
                    f,
                    "dangling edge endpoint: edge {edge} refers to node {node}"
                )
            }
            Violation::DuplicateEdge { edge, src, dst } => {
                write!(f, "duplicate edge: edge {edge} repeats ({src},{dst})")
            }
            Violation::InvalidToken { node, token } => {
                write!(f, "invalid label token: node {node} has {token:?}")
            }
        }
    }
}

/// Lists every invariant violation of `g`; empty iff `g` is well-formed.
pub fn validate_graph(g: &LabeledGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for (node, token) in g.labels.iter().enumerate() {
        if !is_valid_token(token) {
            out.push(Violation::InvalidToken {
                node,
                token: token.clone(),
            });
        }
    }
    let n = g.node_count();
    let mut seen = HashSet::with_capacity(g.edge_count());
    for (edge, &(src, dst)) in g.edges.iter().enumerate() {
        let mut dangling = false;
        for node in [src, dst] {
            if node >= n {
                out.push(Violation::DanglingEndpoint { edge, node });
                dangling = true;
            }
        }
        if !dangling && !seen.insert((src, dst)) {
            out.push(Violation::DuplicateEdge { edge, src, dst });
        }
    }
    out
}

/// True iff every node's out-neighbours carry pairwise distinct labels.
pub fn is_deterministic(g: &LabeledGraph) -> Result<bool> {
    g.ensure_valid()?;
    for succ in g.successors() {
        let mut labels = HashSet::with_capacity(succ.len());
        if !succ.iter().all(|&w| labels.insert(g.label(w))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximum over nodes of in-degree plus out-degree. Endpoints outside the
/// node range are ignored.
pub fn max_degree_sum(g: &LabeledGraph) -> usize {
    let mut deg = vec![0usize; g.node_count()];
    for &(u, v) in &g.edges {
        for w in [u, v] {
            if let Some(d) = deg.get_mut(w) {
                *d += 1;
            }
        }
    }
    deg.into_iter().max().unwrap_or(0)
}

pub fn is_acyclic(g: &LabeledGraph) -> Result<bool> {
    g.ensure_valid()?;
    Ok(petgraph::algo::toposort(&g.to_petgraph(), None).is_ok())
}

/// Number of back edges met by a depth-first search started from the nodes
/// in id order. Self-loops count as back edges.
pub fn back_edge_count(g: &LabeledGraph) -> Result<usize> {
    g.ensure_valid()?;
    let pg = g.to_petgraph();
    let mut count = 0;
    depth_first_search(&pg, pg.node_indices(), |event| {
        if let DfsEvent::BackEdge(..) = event {
            count += 1;
        }
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(labels: &[&str], edges: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::from_parts(
            labels.iter().map(|s| s.to_string()).collect(),
            edges.to_vec(),
        )
    }

    #[test]
    fn validation_diagnostics() {
        assert!(validate_graph(&graph(&["a", "b"], &[(0, 1)])).is_empty());

        let v = validate_graph(&graph(&["a", "b"], &[(0, 5)]));
        assert_eq!(v, vec![Violation::DanglingEndpoint { edge: 0, node: 5 }]);
        assert!(v[0].to_string().starts_with("dangling edge endpoint"));

        let v = validate_graph(&graph(&["a", "b"], &[(0, 1), (0, 1)]));
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("duplicate edge"));

        let v = validate_graph(&graph(&["a b", ""], &[]));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn determinism() {
        let path = graph(&["0", "1", "0"], &[(0, 1), (1, 2)]);
        assert!(is_deterministic(&path).unwrap());
        let fork = graph(&["x", "0", "1"], &[(0, 1), (0, 2)]);
        assert!(is_deterministic(&fork).unwrap());
        let clash = graph(&["x", "0", "0"], &[(0, 1), (0, 2)]);
        assert!(!is_deterministic(&clash).unwrap());
        assert!(is_deterministic(&graph(&["a"], &[(0, 3)])).is_err());
    }

    #[test]
    fn degree_sums() {
        assert_eq!(max_degree_sum(&graph(&["a"], &[])), 0);
        assert_eq!(
            max_degree_sum(&graph(&["a", "b", "c"], &[(0, 1), (1, 2)])),
            2
        );
        let star = graph(&["c", "a", "b", "d"], &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(max_degree_sum(&star), 3);
    }

    #[test]
    fn cycles() {
        let path = graph(&["a", "b", "c"], &[(0, 1), (1, 2)]);
        assert!(is_acyclic(&path).unwrap());
        assert_eq!(back_edge_count(&path).unwrap(), 0);

        let looped = graph(&["a", "b"], &[(0, 1), (1, 1), (1, 0)]);
        assert!(!is_acyclic(&looped).unwrap());
        assert_eq!(back_edge_count(&looped).unwrap(), 2);
    }

    #[test]
    fn bit_vectors() {
        let x = BitVector::from_bit_str("10").unwrap();
        let y = BitVector::from_bit_str("01").unwrap();
        assert!(x.is_orthogonal(&y));
        assert_eq!(x.dot(&x), 1);
        assert_eq!(x.to_string(), "10");
        assert!(BitVector::from_bit_str("102").is_none());
        assert!(OvInstance::new(vec![x], vec![BitVector::zeros(3)], 2).is_err());
    }
}
