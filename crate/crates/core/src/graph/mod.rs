//! Finite directed multigraphs and the integer data attached to them.

mod dsl;
mod families;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::linalg::IntMatrix;

pub use dsl::{parse_graph, parse_structured, serialize_graph, StructuredGraph};
pub use families::{family, Family};

/// Upper bound on the number of edges a graph may have.
pub const MAX_EDGES: usize = 1_000_000;

/// Index of a vertex in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

/// Index of an edge in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub label: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite directed graph with individually labelled vertices and edges.
/// Loops and parallel edges are allowed; vertex order fixes the index
/// order of every matrix and vector derived from the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.vertices.iter().position(|l| l == label).map(VertexId)
    }

    pub fn edge_by_label(&self, label: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.label == label).map(EdgeId)
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn target(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].target
    }

    /// Edges leaving `v`, in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges[v.0].len()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    /// Finite graphs: regular means "emits at least one edge".
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.is_sink(v)
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_sink(v)).collect()
    }

    /// `a_ij` = number of edges from `v_i` to `v_j`.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let m = self.vertex_count();
        let mut a = IntMatrix::zeros(m, m);
        for e in &self.edges {
            a[(e.source.0, e.target.0)] += 1;
        }
        a
    }

    /// `B_i = (a_ij)_j − ε_i` for regular `v_i`, the zero vector for sinks.
    pub fn b_vectors(&self) -> Vec<Vec<BigInt>> {
        let a = self.adjacency_matrix();
        self.vertices()
            .map(|v| {
                let mut b = vec![BigInt::from(0); self.vertex_count()];
                if self.is_regular(v) {
                    b.clone_from_slice(a.row(v.0));
                    b[v.0] -= 1;
                }
                b
            })
            .collect()
    }

    /// `M_E = I − Aᵗ`.
    pub fn m_matrix(&self) -> IntMatrix {
        let m = self.vertex_count();
        let at = self.adjacency_matrix().transpose();
        let mut out = IntMatrix::identity(m);
        for i in 0..m {
            for j in 0..m {
                out[(i, j)] -= &at[(i, j)];
            }
        }
        out
    }

    /// Same graph with vertices declared in the order `order` (a
    /// permutation of the current indices). Edge order is preserved.
    pub fn permute_vertices(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.vertex_count());
        let mut new_index = vec![usize::MAX; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut b = GraphBuilder::new();
        for &old in order {
            b.add_vertex(&self.vertices[old])
                .expect("labels stay unique");
        }
        for e in &self.edges {
            b.add_edge(
                &e.label,
                VertexId(new_index[e.source.0]),
                VertexId(new_index[e.target.0]),
            )
            .expect("labels stay unique");
        }
        b.build().expect("nonempty")
    }
}

/// Incremental construction with label checks.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_labels: HashMap<String, usize>,
    auto_counter: HashMap<(usize, usize), usize>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<VertexId, GraphError> {
        if self.vertex_index.contains_key(label) {
            return Err(GraphError::DuplicateVertex {
                line: 0,
                label: label.to_string(),
            });
        }
        let id = self.vertices.len();
        self.vertices.push(label.to_string());
        self.vertex_index.insert(label.to_string(), id);
        Ok(VertexId(id))
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.vertex_index.get(label).copied().map(VertexId)
    }

    pub fn add_edge(
        &mut self,
        label: &str,
        source: VertexId,
        target: VertexId,
    ) -> Result<EdgeId, GraphError> {
        if self.edges.len() >= MAX_EDGES {
            return Err(GraphError::TooManyEdges { limit: MAX_EDGES });
        }
        if self.edge_labels.contains_key(label) {
            return Err(GraphError::DuplicateEdge {
                line: 0,
                label: label.to_string(),
            });
        }
        let id = self.edges.len();
        self.edge_labels.insert(label.to_string(), id);
        self.edges.push(Edge {
            label: label.to_string(),
            source,
            target,
        });
        Ok(EdgeId(id))
    }

    /// Adds `count` parallel edges labelled `<src>_<dst>_<k>`, where `k`
    /// continues a per-pair counter across calls.
    pub fn add_edges(
        &mut self,
        source: VertexId,
        target: VertexId,
        count: usize,
    ) -> Result<Vec<EdgeId>, GraphError> {
        if count > MAX_EDGES.saturating_sub(self.edges.len()) {
            return Err(GraphError::TooManyEdges { limit: MAX_EDGES });
        }
        (0..count)
            .map(|_| {
                let k = self.auto_counter.entry((source.0, target.0)).or_insert(0);
                *k += 1;
                let label = auto_label(&self.vertices[source.0], &self.vertices[target.0], *k);
                self.add_edge(&label, source, target)
            })
            .collect()
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let mut out_edges = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out_edges[e.source.0].push(EdgeId(i));
        }
        Ok(Graph {
            vertices: self.vertices,
            edges: self.edges,
            out_edges,
        })
    }
}

pub(crate) fn auto_label(src: &str, dst: &str, k: usize) -> String {
    format!("{src}_{dst}_{k}")
}

/// Builds a graph from vertex labels and an adjacency matrix, naming edges
/// automatically.
pub fn from_adjacency(labels: &[String], adjacency: &[Vec<u64>]) -> Result<Graph, GraphError> {
    if adjacency.len() != labels.len() || adjacency.iter().any(|r| r.len() != labels.len()) {
        return Err(GraphError::Structured(format!(
            "adjacency must be {0}x{0} for {0} vertices",
            labels.len()
        )));
    }
    let mut b = GraphBuilder::new();
    for l in labels {
        if l.is_empty() || l.chars().any(char::is_whitespace) {
            return Err(GraphError::Structured(format!(
                "invalid vertex label {l:?}"
            )));
        }
        b.add_vertex(l)?;
    }
    for (i, row) in adjacency.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            let k =
                usize::try_from(k).map_err(|_| GraphError::TooManyEdges { limit: MAX_EDGES })?;
            b.add_edges(VertexId(i), VertexId(j), k)?;
        }
    }
    b.build()
}
