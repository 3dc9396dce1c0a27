//! Relative isoperimetric dimension, the P(δ, ι, R₀) certificate, and
//! brute-force verification of `σ(∂Ω) ≥ c μ(Ω)^{1−1/n}`.

mod certificate;
mod constant;
mod scan;

pub use certificate::{
    check_p, ConditionResult, PCertificate, PParams, Potential, PotentialAttempt, Witness,
};
pub use constant::{constant_c, ConstantVariant};
pub use scan::{
    edge_total_check, empirical_iso_constant, verify_isoperimetric, EdgeTotalCheck, IsoReport,
    ScanMode, Violation, EXHAUSTIVE_VERTEX_LIMIT,
};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{graph_distance, Distance, DistanceMatrix, GraphError, WeightedGraph};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IsoError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {x} is unreachable from {xi}")]
    UnreachableVertex { xi: usize, x: usize },
    #[error("no pair (ξ, x) in the balls has μ^ξ_x > 0")]
    NoAdmissiblePair,
    #[error("dimension n = {0} must exceed 1")]
    DimensionTooSmall(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("exhaustive scan limited to {limit} vertices, graph has {count}")]
    BudgetExceeded { limit: usize, count: usize },
    #[error("graph has no proper nonempty vertex subset")]
    NoProperSubset,
}

pub(crate) fn mu_directed_from(graph: &WeightedGraph, dist_from_xi: &[Distance], x: usize) -> f64 {
    let dx = dist_from_xi[x];
    graph
        .neighbors(x)
        .filter(|&(y, _)| dist_from_xi[y] < dx)
        .map(|(_, s)| s)
        .sum()
}

/// `μ^ξ_x = Σ_{y~x, ρ_ξ(y) < ρ_ξ(x)} σ_xy`: weight of the edges from `x`
/// toward `ξ`. Zero at `x = ξ`.
pub fn mu_directed(graph: &WeightedGraph, xi: usize, x: usize) -> Result<f64, IsoError> {
    let dist = graph_distance(graph, xi)?;
    if x >= graph.vertex_count() {
        return Err(GraphError::VertexOutOfRange {
            vertex: x,
            count: graph.vertex_count(),
        }
        .into());
    }
    if !dist[x].is_finite() {
        return Err(IsoError::UnreachableVertex { xi, x });
    }
    Ok(mu_directed_from(graph, &dist, x))
}

/// The value of `ν_r` and a pair attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NuValue {
    pub value: f64,
    pub xi: usize,
    pub x: usize,
}

/// `ν_r = inf { μ_x / μ^ξ_x : ξ ∈ V, x ∈ B_ξ(r) }`, skipping pairs with
/// `μ^ξ_x = 0` (such as `x = ξ`), which would contribute `+∞`.
pub fn nu(graph: &WeightedGraph, r: f64) -> Result<f64, IsoError> {
    nu_with(graph, &DistanceMatrix::new(graph), r).map(|v| v.value)
}

/// [`nu`] with a precomputed distance matrix, returning the minimizing pair
/// (first in `(ξ, x)` order on ties).
pub fn nu_with(
    graph: &WeightedGraph,
    distances: &DistanceMatrix,
    r: f64,
) -> Result<NuValue, IsoError> {
    if r.is_nan() || r <= 0.0 {
        return Err(GraphError::InvalidRadius(r).into());
    }
    let mut best: Option<NuValue> = None;
    for xi in 0..graph.vertex_count() {
        let row = distances.row(xi);
        for x in 0..graph.vertex_count() {
            if !row[x].less_than(r) {
                continue;
            }
            let directed = mu_directed_from(graph, row, x);
            if directed <= 0.0 {
                continue;
            }
            let value = graph.mu(x) / directed;
            if best.is_none_or(|b| value < b.value) {
                best = Some(NuValue { value, xi, x });
            }
        }
    }
    best.ok_or(IsoError::NoAdmissiblePair)
}

/// Pairs `(ξ, x)` with `x ≠ ξ` reachable and `μ^ξ_x = μ_x`, i.e. every edge at
/// `x` leads strictly toward `ξ`.
pub fn saturated_pairs(graph: &WeightedGraph, distances: &DistanceMatrix) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for xi in 0..graph.vertex_count() {
        let row = distances.row(xi);
        for x in 0..graph.vertex_count() {
            if x != xi && row[x].is_finite() && mu_directed_from(graph, row, x) >= graph.mu(x) {
                out.push((xi, x));
            }
        }
    }
    out
}
