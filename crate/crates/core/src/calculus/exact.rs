//! Exact rational evaluation of the calculus identities on unit-weight
//! graphs, used to validate the floating-point path.

use num_rational::Ratio;

use super::CalculusError;
use crate::graph::{boundary, Subset, WeightedGraph};

pub type Rational = Ratio<i128>;

fn require_unit(graph: &WeightedGraph) -> Result<(), CalculusError> {
    if graph.is_unit_weight() {
        Ok(())
    } else {
        Err(CalculusError::NonUnitWeights)
    }
}

fn check_len(graph: &WeightedGraph, f: &[i64]) -> Result<(), CalculusError> {
    if f.len() != graph.vertex_count() {
        return Err(CalculusError::LengthMismatch {
            expected: graph.vertex_count(),
            got: f.len(),
        });
    }
    Ok(())
}

/// `Δf(x) = (1/deg x) Σ_{y~x} (f(y) − f(x))`; `None` at isolated vertices.
pub fn laplacian(graph: &WeightedGraph, f: &[i64]) -> Result<Vec<Option<Rational>>, CalculusError> {
    require_unit(graph)?;
    check_len(graph, f)?;
    Ok((0..graph.vertex_count())
        .map(|x| {
            let deg = graph.degree(x) as i128;
            (deg > 0).then(|| {
                let sum: i128 = graph.neighbors(x).map(|(y, _)| (f[y] - f[x]) as i128).sum();
                Rational::new(sum, deg)
            })
        })
        .collect())
}

/// Exact `(Σ_{x∈Ω} Δf(x) μ_x, Σ_{e∈∂Ω} ∇_e f)` with outward orientation.
pub fn green(
    graph: &WeightedGraph,
    f: &[i64],
    omega: &Subset,
) -> Result<(Rational, Rational), CalculusError> {
    let lap = laplacian(graph, f)?;
    let lhs = omega
        .iter()
        .filter_map(|x| lap[x].map(|d| d * Rational::from_integer(graph.degree(x) as i128)))
        .sum();
    let rhs = boundary(graph, omega)
        .into_iter()
        .map(|id| {
            let e = graph.edge(id);
            let (inside, outside) = if omega.contains(e.u) {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            };
            Rational::from_integer((f[outside] - f[inside]) as i128)
        })
        .sum();
    Ok((lhs, rhs))
}

/// Exact `(Σ_x Δf(x) g(x) μ_x, −Σ_e (∇_e f)(∇_e g))`.
pub fn summation_by_parts(
    graph: &WeightedGraph,
    f: &[i64],
    g: &[i64],
) -> Result<(Rational, Rational), CalculusError> {
    check_len(graph, g)?;
    let lap = laplacian(graph, f)?;
    let vertex_sum = (0..graph.vertex_count())
        .filter_map(|x| {
            lap[x].map(|d| d * Rational::from_integer(g[x] as i128 * graph.degree(x) as i128))
        })
        .sum();
    let edge_sum: i128 = graph
        .edges()
        .iter()
        .map(|e| -((f[e.v] - f[e.u]) as i128) * ((g[e.v] - g[e.u]) as i128))
        .sum();
    Ok((vertex_sum, Rational::from_integer(edge_sum)))
}
