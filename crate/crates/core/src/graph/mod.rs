//! Connected simple graphs with dense vertex and edge identifiers.
//!
//! Every other object in the crate (traces, embeddings, certificates) refers
//! back to a [`Graph`] by vertex and edge id, so the numbering is fixed at
//! construction: vertices are `0..n`, edges are `0..m` in insertion order.

mod bridges;
mod parse;
mod spanning;

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

pub use bridges::cut_edges;
pub use parse::parse_graph;
pub use spanning::{cotree_components_even, spanning_trees, SpanningTree, SpanningTrees};
pub(crate) use spanning::cotree_components;

use crate::budget::BudgetExceeded;

/// Dense vertex identifier.
pub type Vertex = usize;
/// Dense edge identifier.
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("loop at vertex {label:?}")]
    Loop { label: String },
    #[error("duplicate edge {{{u:?}, {v:?}}}")]
    DuplicateEdge { u: String, v: String },
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

impl GraphError {
    /// True for the loop / multi-edge rejections.
    pub fn is_not_simple(&self) -> bool {
        matches!(self, GraphError::Loop { .. } | GraphError::DuplicateEdge { .. })
    }
}

/// A connected simple graph with at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<(EdgeId, Vertex)>>,
}

impl Graph {
    /// Builds a graph on `0..vertex_count` with vertex labels `"0"`, `"1"`, ...
    pub fn from_edges(vertex_count: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let labels = (0..vertex_count).map(|v| v.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph whose vertex `i` is reported as `labels[i]`.
    pub fn with_labels(labels: Vec<String>, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, vertex_count: n });
                }
            }
            if u == v {
                return Err(GraphError::Loop { label: labels[u].clone() });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge { u: labels[u].clone(), v: labels[v].clone() });
            }
            adjacency[u].push((id, v));
            adjacency[v].push((id, u));
        }
        if edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        let graph = Graph { labels, edges: edges.to_vec(), adjacency };
        if !graph.is_connected_without(None) {
            return Err(GraphError::NotConnected);
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.labels.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Endpoints of `e` in the order they were given at construction.
    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// `(edge, neighbour)` pairs at `v`, ordered by edge id.
    pub fn incident(&self, v: Vertex) -> &[(EdgeId, Vertex)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[v].iter().map(|&(_, w)| w)
    }

    /// The edge joining `u` and `v`, if any. Unique because the graph is simple.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let (short, other) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[short].iter().find(|&&(_, w)| w == other).map(|&(e, _)| e)
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Smallest-id vertex of minimum degree.
    pub fn min_degree_vertex(&self) -> Vertex {
        self.vertices().min_by_key(|&v| (self.degree(v), v)).unwrap_or(0)
    }

    /// Betti number (cycle rank) `|E| - |V| + 1`.
    pub fn betti(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.betti() == 0
    }

    /// A connected graph is Eulerian iff every degree is even.
    pub fn is_eulerian(&self) -> bool {
        self.odd_vertex().is_none()
    }

    /// Smallest vertex of odd degree, if any.
    pub fn odd_vertex(&self) -> Option<Vertex> {
        self.vertices().find(|&v| self.degree(v) % 2 == 1)
    }

    /// Connectivity check by BFS, optionally pretending one edge is absent.
    pub fn is_connected_without(&self, removed: Option<EdgeId>) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &(e, w) in &self.adjacency[v] {
                if Some(e) == removed || seen[w] {
                    continue;
                }
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
        reached == n
    }
}
