//! Discrete gradient, Laplacian, and the two integration-by-parts identities.
//!
//! Conventions:
//! - `∇_xy f = f(y) − f(x)` for any pair.
//! - `Δf(x) = (1/μ_x) Σ_{y~x} (∇_xy f) σ_xy`, the μ-normalized Laplacian.
//! - [`dirichlet_energy`] returns the ordered-pair sum, twice the per-edge sum.

pub mod exact;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{boundary, Subset, WeightedGraph};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalculusError {
    #[error("function value at vertex {index} is not finite")]
    NonFinite { index: usize },
    #[error("function has {got} values, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} out of range for a function on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("vertex {0} is isolated (μ = 0); the Laplacian is undefined there")]
    IsolatedVertex(usize),
    #[error("exponent {0} is outside the admissible range")]
    InvalidExponent(f64),
    #[error("exact mode needs unit edge weights")]
    NonUnitWeights,
}

/// A real function on the vertex set.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VertexFunction {
    values: Vec<f64>,
}

impl VertexFunction {
    pub fn new(values: Vec<f64>) -> Result<Self, CalculusError> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(CalculusError::NonFinite { index });
        }
        Ok(VertexFunction { values })
    }

    pub fn zeros(n: usize) -> Self {
        VertexFunction {
            values: vec![0.0; n],
        }
    }

    /// Panics on a non-finite constant.
    pub fn constant(n: usize, c: f64) -> Self {
        assert!(c.is_finite());
        VertexFunction { values: vec![c; n] }
    }

    /// `𝟙_Ω`.
    pub fn indicator(omega: &Subset) -> Self {
        let mut values = vec![0.0; omega.universe()];
        for x in omega.iter() {
            values[x] = 1.0;
        }
        VertexFunction { values }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> f64) -> Result<Self, CalculusError> {
        Self::new((0..n).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, x: usize) -> f64 {
        self.values[x]
    }

    /// `Ω₀ = {x : |f(x)| > 0}`.
    pub fn support(&self) -> Subset {
        Subset::from_indices(
            self.len(),
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, _)| i),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &VertexFunction, b: f64) -> Result<Self, CalculusError> {
        if other.len() != self.len() {
            return Err(CalculusError::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Self::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        )
    }

    pub(crate) fn check_len(&self, graph: &WeightedGraph) -> Result<(), CalculusError> {
        if self.len() != graph.vertex_count() {
            return Err(CalculusError::LengthMismatch {
                expected: graph.vertex_count(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// `|x|^p` with exact fast paths for `p = 1, 2`.
pub(crate) fn abs_pow(x: f64, p: f64) -> f64 {
    let a = x.abs();
    if p == 1.0 {
        a
    } else if p == 2.0 {
        a * a
    } else {
        a.powf(p)
    }
}

/// `∇_xy f = f(y) − f(x)`.
pub fn gradient(f: &VertexFunction, x: usize, y: usize) -> Result<f64, CalculusError> {
    for vertex in [x, y] {
        if vertex >= f.len() {
            return Err(CalculusError::VertexOutOfRange {
                vertex,
                count: f.len(),
            });
        }
    }
    Ok(f.values[y] - f.values[x])
}

/// `Σ_{y~x} (∇_xy f) σ_xy`, i.e. `μ_x Δf(x)` without the division.
pub(crate) fn weighted_gradient_sum(graph: &WeightedGraph, f: &VertexFunction, x: usize) -> f64 {
    let fx = f.values[x];
    graph
        .neighbors(x)
        .map(|(y, s)| (f.values[y] - fx) * s)
        .sum()
}

/// `Δf(x)`, or `None` at an isolated vertex.
pub fn laplacian_at(graph: &WeightedGraph, f: &VertexFunction, x: usize) -> Option<f64> {
    let mu = graph.mu(x);
    (mu > 0.0).then(|| weighted_gradient_sum(graph, f, x) / mu)
}

/// `Δf` at every vertex. Fails if any vertex is isolated.
pub fn laplacian(
    graph: &WeightedGraph,
    f: &VertexFunction,
) -> Result<VertexFunction, CalculusError> {
    f.check_len(graph)?;
    let values = (0..graph.vertex_count())
        .map(|x| laplacian_at(graph, f, x).ok_or(CalculusError::IsolatedVertex(x)))
        .collect::<Result<Vec<_>, _>>()?;
    VertexFunction::new(values)
}

/// Both sides of an identity and their absolute difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Sum of absolute values of the terms, for relative tolerances.
    pub scale: f64,
}

impl IdentityCheck {
    pub fn within(&self, tol: f64) -> bool {
        self.residual <= tol * (1.0 + self.scale)
    }
}

/// Green's formula on `Ω`:
/// `Σ_{x∈Ω} Δf(x) μ_x = Σ_{e∈∂Ω} (∇_e f) σ_e`,
/// with each boundary gradient oriented outwards, `f(outside) − f(inside)`.
/// Isolated vertices contribute zero to the left side.
pub fn check_green(
    graph: &WeightedGraph,
    f: &VertexFunction,
    omega: &Subset,
) -> Result<IdentityCheck, CalculusError> {
    f.check_len(graph)?;
    let mut lhs = 0.0;
    let mut scale = 0.0;
    for x in omega.iter() {
        if let Some(d) = laplacian_at(graph, f, x) {
            let term = d * graph.mu(x);
            lhs += term;
            scale += term.abs();
        }
    }
    let mut rhs = 0.0;
    for id in boundary(graph, omega) {
        let e = graph.edge(id);
        let (inside, outside) = if omega.contains(e.u) {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        };
        let term = (f.get(outside) - f.get(inside)) * e.sigma;
        rhs += term;
        scale += term.abs();
    }
    Ok(IdentityCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        scale,
    })
}

/// The three forms of summation by parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummationByParts {
    /// `Σ_x Δf(x) g(x) μ_x`
    pub vertex_sum: f64,
    /// `−½ Σ_{x,y} (∇_xy f)(∇_xy g) σ_xy` over ordered adjacent pairs
    pub ordered_pair_sum: f64,
    /// `−Σ_{e∈E} (∇_e f)(∇_e g) σ_e`
    pub edge_sum: f64,
    pub residual: f64,
    pub scale: f64,
}

impl SummationByParts {
    pub fn within(&self, tol: f64) -> bool {
        self.residual <= tol * (1.0 + self.scale)
    }
}

pub fn check_summation_by_parts(
    graph: &WeightedGraph,
    f: &VertexFunction,
    g: &VertexFunction,
) -> Result<SummationByParts, CalculusError> {
    f.check_len(graph)?;
    g.check_len(graph)?;
    let mut vertex_sum = 0.0;
    let mut scale = 0.0;
    for x in 0..graph.vertex_count() {
        if let Some(d) = laplacian_at(graph, f, x) {
            let term = d * g.get(x) * graph.mu(x);
            vertex_sum += term;
            scale += term.abs();
        }
    }
    let mut ordered = 0.0;
    for x in 0..graph.vertex_count() {
        for (y, s) in graph.neighbors(x) {
            ordered += (f.get(y) - f.get(x)) * (g.get(y) - g.get(x)) * s;
        }
    }
    let ordered_pair_sum = -0.5 * ordered;
    let mut edge_sum = 0.0;
    for e in graph.edges() {
        let term = (f.get(e.v) - f.get(e.u)) * (g.get(e.v) - g.get(e.u)) * e.sigma;
        edge_sum -= term;
        scale += term.abs();
    }
    let residual = (vertex_sum - edge_sum)
        .abs()
        .max((ordered_pair_sum - edge_sum).abs());
    Ok(SummationByParts {
        vertex_sum,
        ordered_pair_sum,
        edge_sum,
        residual,
        scale,
    })
}

/// `Σ_{x,y∈V, y~x} |f(y) − f(x)|^p σ_xy` over ordered pairs (twice the
/// per-edge sum).
pub fn dirichlet_energy(
    graph: &WeightedGraph,
    f: &VertexFunction,
    p: f64,
) -> Result<f64, CalculusError> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(CalculusError::InvalidExponent(p));
    }
    f.check_len(graph)?;
    Ok(2.0 * edge_energy(graph, f.values(), p))
}

pub(crate) fn edge_energy(graph: &WeightedGraph, f: &[f64], p: f64) -> f64 {
    graph
        .edges()
        .iter()
        .map(|e| abs_pow(f[e.v] - f[e.u], p) * e.sigma)
        .sum()
}

/// Whether a norm carries the vertex weights `μ_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Weighting {
    Mu,
    Unweighted,
}

/// `Σ_x |f(x)|^p w_x` for `p > 0`, `w = μ` or `w ≡ 1`.
pub fn power_sum(
    graph: &WeightedGraph,
    f: &VertexFunction,
    p: f64,
    weighting: Weighting,
) -> Result<f64, CalculusError> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(CalculusError::InvalidExponent(p));
    }
    f.check_len(graph)?;
    Ok(power_sum_raw(graph, f.values(), p, weighting))
}

pub(crate) fn power_sum_raw(graph: &WeightedGraph, f: &[f64], p: f64, weighting: Weighting) -> f64 {
    f.iter()
        .enumerate()
        .map(|(x, &v)| {
            let w = match weighting {
                Weighting::Mu => graph.mu(x),
                Weighting::Unweighted => 1.0,
            };
            abs_pow(v, p) * w
        })
        .sum()
}

/// `(Σ_x |f(x)|^p w_x)^{1/p}` for `p ≥ 1`.
pub fn lp_norm(
    graph: &WeightedGraph,
    f: &VertexFunction,
    p: f64,
    weighting: Weighting,
) -> Result<f64, CalculusError> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(CalculusError::InvalidExponent(p));
    }
    let s = power_sum(graph, f, p, weighting)?;
    Ok(if p == 1.0 { s } else { s.powf(1.0 / p) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> WeightedGraph {
        WeightedGraph::unweighted(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn rejects_non_finite_values() {
        assert_eq!(
            VertexFunction::new(vec![0.0, f64::INFINITY]).unwrap_err(),
            CalculusError::NonFinite { index: 1 }
        );
    }

    #[test]
    fn gradient_out_of_range() {
        let f = VertexFunction::zeros(2);
        assert!(matches!(
            gradient(&f, 0, 2),
            Err(CalculusError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn laplacian_isolated_vertex() {
        let g = WeightedGraph::unweighted(3, [(0, 1)]).unwrap();
        let f = VertexFunction::zeros(3);
        assert_eq!(
            laplacian(&g, &f).unwrap_err(),
            CalculusError::IsolatedVertex(2)
        );
    }

    #[test]
    fn single_edge_energy() {
        let g = single_edge();
        let f = VertexFunction::new(vec![0.0, 3.0]).unwrap();
        assert_eq!(dirichlet_energy(&g, &f, 2.0).unwrap(), 18.0);
        assert!(matches!(
            dirichlet_energy(&g, &f, 0.5),
            Err(CalculusError::InvalidExponent(_))
        ));
    }

    #[test]
    fn weighted_laplacian_by_hand() {
        // μ_0 = 3, Δf(0) = (2·(1−0) + 1·(4−0)) / 3 = 2.
        let g = WeightedGraph::from_edges(3, [(0, 1, 2.0), (0, 2, 1.0)]).unwrap();
        let f = VertexFunction::new(vec![0.0, 1.0, 4.0]).unwrap();
        let lap = laplacian(&g, &f).unwrap();
        assert_eq!(lap.get(0), 2.0);
        assert_eq!(lap.get(1), -1.0);
        assert_eq!(lap.get(2), -4.0);
    }

    #[test]
    fn unweighted_norm_ignores_mu() {
        let g = WeightedGraph::from_edges(2, [(0, 1, 3.0)]).unwrap();
        let f = VertexFunction::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(lp_norm(&g, &f, 1.0, Weighting::Unweighted).unwrap(), 3.0);
        assert_eq!(lp_norm(&g, &f, 1.0, Weighting::Mu).unwrap(), 9.0);
        assert_eq!(
            lp_norm(&g, &VertexFunction::zeros(2), 2.0, Weighting::Mu).unwrap(),
            0.0
        );
    }
}
