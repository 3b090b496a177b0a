//! Simple undirected graphs, vertex weights and the small set of
//! operations the constructions and oracles need.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Dense vertex index, `0..n`.
pub type VertexId = u32;

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are kept normalized (`u < v`) and sorted; adjacency lists are sorted
/// as well, so two graphs built from the same edge set compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Graph without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Rejects self-loops, duplicate edges
    /// and endpoints outside `0..n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let hi = u.max(v);
            if hi as usize >= n {
                return Err(GraphError::VertexOutOfRange { vertex: hi, n });
            }
            normalized.push((u.min(v), hi));
        }
        normalized.sort_unstable();
        for pair in normalized.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateEdge(pair[0].0, pair[0].1));
            }
        }
        Ok(Self::from_sorted_unique(n, normalized))
    }

    // Caller guarantees normalized, sorted, loop-free, duplicate-free edges.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(VertexId, VertexId)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n as VertexId {
            for v in u + 1..n as VertexId {
                edges.push((u, v));
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    /// Cycle `C_n` for `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges = (0..n as VertexId).map(|i| (i, (i + 1) % n as VertexId));
        Self::from_edges(n, edges).expect("cycle edges are simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Normalized edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.n as VertexId
    }

    /// Returns an edge inside `set`, if any.
    pub fn edge_within(&self, set: &[VertexId]) -> Option<(VertexId, VertexId)> {
        let members: BTreeSet<VertexId> = set.iter().copied().collect();
        for &u in &members {
            for &v in self.neighbors(u) {
                if v > u && members.contains(&v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_independent(&self, set: &[VertexId]) -> bool {
        self.edge_within(set).is_none()
    }

    /// Graphviz DOT rendering; when `weights` is given each node is labeled
    /// `id:weight`.
    pub fn to_dot(&self, weights: Option<&WeightMap>) -> String {
        let mut out = String::from("graph G {\n");
        for v in self.vertices() {
            match weights {
                Some(w) => out.push_str(&format!("  {v} [label=\"{v}:{}\"];\n", w.get(v))),
                None => out.push_str(&format!("  {v};\n")),
            }
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Positive integer weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightMap(Vec<u64>);

impl WeightMap {
    /// Rejects zero weights.
    pub fn new(weights: Vec<u64>) -> Result<Self, GraphError> {
        if let Some(v) = weights.iter().position(|&w| w == 0) {
            return Err(GraphError::ZeroWeight(v as VertexId));
        }
        Ok(WeightMap(weights))
    }

    pub fn unit(n: usize) -> Self {
        WeightMap(vec![1; n])
    }

    pub fn get(&self, v: VertexId) -> u64 {
        self.0[v as usize]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn max(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Exact total weight.
    pub fn total(&self) -> BigUint {
        self.0.iter().map(|&w| BigUint::from(w)).sum()
    }

    /// Total weight of a vertex subset.
    pub fn weight_of(&self, set: &[VertexId]) -> u64 {
        set.iter().map(|&v| self.get(v)).sum()
    }

    pub(crate) fn push(&mut self, w: u64) {
        debug_assert!(w > 0);
        self.0.push(w);
    }
}

/// Result of [`blow_up`]: the replicated graph and, per new vertex, the
/// original vertex and copy index (`1..=w(v)`).
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub graph: Graph,
    pub class: Vec<(VertexId, u32)>,
}

/// Replaces each vertex `v` by an independent class of `w(v)` vertices and
/// joins the classes of adjacent vertices completely.
///
/// New vertices are numbered class by class in vertex order, copies in
/// increasing copy index.
pub fn blow_up(graph: &Graph, weights: &WeightMap) -> BlowUp {
    assert_eq!(graph.vertex_count(), weights.len(), "one weight per vertex");
    let mut first = Vec::with_capacity(graph.vertex_count() + 1);
    let mut class = Vec::new();
    let mut next = 0u32;
    for v in graph.vertices() {
        first.push(next);
        for c in 1..=weights.get(v) as u32 {
            class.push((v, c));
        }
        next += weights.get(v) as u32;
    }
    let mut edges = Vec::new();
    for &(u, v) in graph.edges() {
        for a in 0..weights.get(u) as u32 {
            for b in 0..weights.get(v) as u32 {
                edges.push((first[u as usize] + a, first[v as usize] + b));
            }
        }
    }
    // u < v and classes are numbered in vertex order, so every pair is normalized.
    edges.sort_unstable();
    BlowUp {
        graph: Graph::from_sorted_unique(class.len(), edges),
        class,
    }
}
