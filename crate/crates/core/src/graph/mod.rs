//! Weighted, undirected, locally finite graphs.
//!
//! Each edge is stored once as an unordered pair `u < v` carrying its weight
//! σ. Vertex weights are derived: `μ_x = Σ_{y~x} σ_xy`, which is the degree
//! when all weights are 1. Sums the literature writes over ordered pairs
//! `x, y ∈ V, y ~ x` are twice the per-edge sums; functions that return such a
//! value say so.

mod export;
mod hamiltonian;
mod noncommuting;
mod subset;

pub use export::{GraphDump, JsonEdge};
pub use hamiltonian::{hamiltonian_cycle, HAMILTONIAN_VERTEX_LIMIT};
pub use noncommuting::noncommuting_graph;
pub use subset::Subset;

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {u}-{v} has non-positive or non-finite weight {sigma}")]
    BadWeight { u: usize, v: usize, sigma: f64 },
    #[error("expected {expected} vertex labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("group is abelian: the noncommuting graph has no vertices")]
    AbelianGroup,
    #[error("ball radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("search limited to {limit} vertices, graph has {count}")]
    BudgetExceeded { limit: usize, count: usize },
    #[error("malformed graph dump: {0}")]
    Dump(String),
}

pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sigma: f64,
}

impl Edge {
    /// The endpoint opposite `x`, if `x` is an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

/// Hop distance; `Infinite` between different connected components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// `ρ < r` with `Infinite` never below a finite radius.
    pub fn less_than(self, r: f64) -> bool {
        match self {
            Distance::Finite(d) => (d as f64) < r,
            Distance::Infinite => false,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Distance::Finite(d) => d as f64,
            Distance::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => serializer.serialize_u32(*d),
            Distance::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Immutable weighted graph.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    /// Per vertex: sorted `(neighbor, edge id)` pairs.
    adjacency: Vec<Vec<(usize, EdgeId)>>,
    edges: Vec<Edge>,
    mu: Vec<f64>,
    labels: Vec<String>,
}

impl WeightedGraph {
    /// Builds a graph from `(u, v, σ)` triples. Edge order in the input is
    /// irrelevant; edges are renumbered in `(min, max)` lexicographic order.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut list = Vec::new();
        for (a, b, sigma) in edges {
            for vertex in [a, b] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex,
                        count: vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !(sigma.is_finite() && sigma > 0.0) {
                return Err(GraphError::BadWeight { u: a, v: b, sigma });
            }
            list.push(Edge {
                u: a.min(b),
                v: a.max(b),
                sigma,
            });
        }
        list.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = list
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut mu = vec![0.0; vertex_count];
        for (id, e) in list.iter().enumerate() {
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
            mu[e.u] += e.sigma;
            mu[e.v] += e.sigma;
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(WeightedGraph {
            adjacency,
            edges: list,
            mu,
            labels: (0..vertex_count).map(|v| v.to_string()).collect(),
        })
    }

    /// Unit-weight graph.
    pub fn unweighted(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::from_edges(vertex_count, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.vertex_count() {
            return Err(GraphError::LabelCount {
                expected: self.vertex_count(),
                got: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sorted neighbors of `x` with the weight of the connecting edge.
    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.adjacency[x]
            .iter()
            .map(move |&(y, id)| (y, self.edges[id].sigma))
    }

    pub fn incident_edges(&self, x: usize) -> impl Iterator<Item = EdgeId> + '_ {
        self.adjacency[x].iter().map(|&(_, id)| id)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adjacency[x].len()
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.sigma(x, y).is_some()
    }

    /// Edge weight `σ_xy`, `None` for non-adjacent pairs.
    pub fn sigma(&self, x: usize, y: usize) -> Option<f64> {
        self.adjacency[x]
            .binary_search_by_key(&y, |&(n, _)| n)
            .ok()
            .map(|i| self.edges[self.adjacency[x][i].1].sigma)
    }

    /// Vertex weight `μ_x`.
    pub fn mu(&self, x: usize) -> f64 {
        self.mu[x]
    }

    pub fn vertex_weights(&self) -> &[f64] {
        &self.mu
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.sigma == 1.0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    /// `ω = min_x μ_x`.
    pub fn min_vertex_weight(&self) -> f64 {
        self.mu.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `ω′ = min σ_xy` over edges; `None` for an edgeless graph.
    pub fn min_edge_weight(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.sigma).reduce(f64::min)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.vertex_count() {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count(),
            })
        } else {
            Ok(())
        }
    }
}

/// Edges with exactly one endpoint in `omega`, sorted by edge id.
pub fn boundary(graph: &WeightedGraph, omega: &Subset) -> Vec<EdgeId> {
    graph
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| omega.contains(e.u) != omega.contains(e.v))
        .map(|(id, _)| id)
        .collect()
}

/// `σ(S)`, each listed edge counted once.
pub fn sigma_measure(graph: &WeightedGraph, edges: &[EdgeId]) -> f64 {
    edges.iter().map(|&id| graph.edges[id].sigma).sum()
}

/// `σ(E)`.
pub fn total_edge_weight(graph: &WeightedGraph) -> f64 {
    graph.edges.iter().map(|e| e.sigma).sum()
}

/// `μ(Ω)`.
pub fn mu_measure(graph: &WeightedGraph, omega: &Subset) -> f64 {
    omega.iter().map(|x| graph.mu[x]).sum()
}

/// Breadth-first hop distances `ρ_ξ(x)`; edge weights play no part.
pub fn graph_distance(graph: &WeightedGraph, xi: usize) -> Result<Vec<Distance>, GraphError> {
    graph.check_vertex(xi)?;
    let mut dist = vec![Distance::Infinite; graph.vertex_count()];
    dist[xi] = Distance::Finite(0);
    let mut queue = VecDeque::from([xi]);
    while let Some(x) = queue.pop_front() {
        let Distance::Finite(d) = dist[x] else {
            unreachable!()
        };
        for &(y, _) in &graph.adjacency[x] {
            if dist[y] == Distance::Infinite {
                dist[y] = Distance::Finite(d + 1);
                queue.push_back(y);
            }
        }
    }
    Ok(dist)
}

/// Open ball `B_ξ(r) = {x : ρ_ξ(x) < r}`.
pub fn ball(graph: &WeightedGraph, xi: usize, r: f64) -> Result<Subset, GraphError> {
    if r.is_nan() || r <= 0.0 {
        return Err(GraphError::InvalidRadius(r));
    }
    let dist = graph_distance(graph, xi)?;
    Ok(ball_from_distances(&dist, r))
}

pub(crate) fn ball_from_distances(dist: &[Distance], r: f64) -> Subset {
    Subset::from_indices(
        dist.len(),
        dist.iter()
            .enumerate()
            .filter(|(_, d)| d.less_than(r))
            .map(|(x, _)| x),
    )
}

/// All-pairs hop distances, one BFS per source.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    rows: Vec<Vec<Distance>>,
}

impl DistanceMatrix {
    pub fn new(graph: &WeightedGraph) -> Self {
        let rows = (0..graph.vertex_count())
            .map(|xi| graph_distance(graph, xi).expect("vertex in range"))
            .collect();
        DistanceMatrix { rows }
    }

    pub fn get(&self, xi: usize, x: usize) -> Distance {
        self.rows[xi][x]
    }

    pub fn row(&self, xi: usize) -> &[Distance] {
        &self.rows[xi]
    }

    pub fn diameter(&self) -> Distance {
        self.rows
            .iter()
            .flat_map(|r| r.iter().copied())
            .max()
            .unwrap_or(Distance::Finite(0))
    }
}

pub fn diameter(graph: &WeightedGraph) -> Distance {
    DistanceMatrix::new(graph).diameter()
}

pub fn is_connected(graph: &WeightedGraph) -> bool {
    graph_distance(graph, 0)
        .map(|d| d.iter().all(|x| x.is_finite()))
        .unwrap_or(false)
}
