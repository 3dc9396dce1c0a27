//! Sobolev-type and Nash-type inequalities on weighted graphs.
//!
//! Three forms are evaluated for a given function `f`:
//!
//! - *flat*: `(c / 2^{1+1/n−1/p}) ‖f‖_{np/(n−p)}
//!   ≤ C(n,p) E_p(f)^{1/p} + c K(Ω₀) ‖f‖_{p,μ}`, where the left norm carries no
//!   vertex weights;
//! - *dagger*: `(Σ |f|^p μ)^{2/p} ≤ A E_2(f)`, `p = 2n/(n−2)`;
//! - *double dagger*: `(Σ |f|² μ)^{1+2/n} ≤ B E_2(f) (Σ |f| μ)^{4/n}`.
//!
//! `E_p(f)` is always the ordered-pair sum `Σ_{x,y, y~x} |f(y)−f(x)|^p σ_xy`.
//! Every report states `lhs ≤ rhs`; see [`crate::tolerance`] for the slack.

mod chain;
mod dyadic;
mod empirical;
mod family;

pub use chain::{verify_chain, ChainReport, LevelLinks, Link};
pub use dyadic::{dyadic_decompose, truncation, DyadicDecomposition, DyadicLevel};
pub use empirical::{empirical_a, empirical_b, empirical_c, EmpiricalConstant};
pub use family::{random_function, Family, FamilySpec};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::calculus::{edge_energy, power_sum_raw, CalculusError, VertexFunction, Weighting};
use crate::graph::{mu_measure, WeightedGraph};
use crate::tolerance;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InequalityError {
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error("Sobolev exponent 2n/(n−2) is undefined for n = {0} ≤ 2")]
    SobolevExponentUndefined(f64),
    #[error("exponent p = {p} must satisfy 1 ≤ p < n = {n}")]
    ExponentRange { p: f64, n: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "family member {index} has zero gradient term but a positive requirement: no finite C(n,p)"
    )]
    NoFiniteC { index: usize },
    #[error("unknown family component {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityKind {
    Flat,
    Dagger,
    DoubleDagger,
}

/// Outcome of one inequality for one function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub inequality: InequalityKind,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, `None` when `rhs = 0`.
    pub ratio: Option<f64>,
    pub holds: bool,
    pub constants_used: BTreeMap<String, f64>,
    /// Index of the tested function in its family, when known.
    pub witness: Option<usize>,
}

impl InequalityReport {
    fn new(inequality: InequalityKind, lhs: f64, rhs: f64, constants: &[(&str, f64)]) -> Self {
        InequalityReport {
            inequality,
            lhs,
            rhs,
            ratio: tolerance::ratio(lhs, rhs),
            holds: tolerance::holds(lhs, rhs),
            constants_used: constants.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            witness: None,
        }
    }

    pub fn with_witness(mut self, index: usize) -> Self {
        self.witness = Some(index);
        self
    }
}

/// `p = 2n / (n − 2)`.
pub fn p_from_n(n: f64) -> Result<f64, InequalityError> {
    if !(n > 2.0) || !n.is_finite() {
        return Err(InequalityError::SobolevExponentUndefined(n));
    }
    Ok(2.0 * n / (n - 2.0))
}

/// `K(Ω₀)`: zero when `μ(Ω₀) ≤ v₀`, else `μ(Ω₀)^{1−1/n} / v₀`.
pub fn k_factor(mu_omega0: f64, v0: f64, n: f64) -> f64 {
    if mu_omega0 <= v0 {
        0.0
    } else {
        mu_omega0.powf(1.0 - 1.0 / n) / v0
    }
}

/// `(2^p − 1)^{2/p} 2^{2(p−1)}`, the factor turning a Nash constant `B` into
/// the Sobolev constant `A` assembled from the dyadic chain.
pub fn sobolev_from_nash_factor(p: f64) -> f64 {
    (p.exp2() - 1.0).powf(2.0 / p) * (2.0 * (p - 1.0)).exp2()
}

/// Sums shared by the inequality forms.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Norms {
    /// `Σ |f| μ`
    pub l1: f64,
    /// `Σ |f|² μ`
    pub l2_sq: f64,
    /// `E_2(f)`, ordered pairs
    pub energy: f64,
}

impl Norms {
    pub fn of(graph: &WeightedGraph, f: &[f64]) -> Self {
        Norms {
            l1: power_sum_raw(graph, f, 1.0, Weighting::Mu),
            l2_sq: power_sum_raw(graph, f, 2.0, Weighting::Mu),
            energy: 2.0 * edge_energy(graph, f, 2.0),
        }
    }
}

pub(crate) fn dagger_sides(graph: &WeightedGraph, f: &[f64], p: f64) -> (f64, f64) {
    let lhs = power_sum_raw(graph, f, p, Weighting::Mu).powf(2.0 / p);
    (lhs, 2.0 * edge_energy(graph, f, 2.0))
}

/// `((Σ|f|²μ)^{1+2/n}, E_2(f) (Σ|f|μ)^{4/n})`.
pub(crate) fn double_dagger_sides(norms: &Norms, n: f64) -> (f64, f64) {
    (
        norms.l2_sq.powf(1.0 + 2.0 / n),
        norms.energy * norms.l1.powf(4.0 / n),
    )
}

/// Checks the flat Sobolev form with `Ω₀ = supp f`.
#[allow(clippy::too_many_arguments)]
pub fn check_sobolev_flat(
    graph: &WeightedGraph,
    f: &VertexFunction,
    c: f64,
    n: f64,
    p: f64,
    v0: f64,
    c_np: f64,
) -> Result<InequalityReport, InequalityError> {
    f.check_len(graph)?;
    if !(p >= 1.0 && p < n) || !n.is_finite() {
        return Err(InequalityError::ExponentRange { p, n });
    }
    if !(v0 > 0.0) || !(c >= 0.0) || !(c_np >= 0.0) {
        return Err(InequalityError::InvalidParameter(format!(
            "need v₀ > 0, c ≥ 0, C ≥ 0; got v₀ = {v0}, c = {c}, C = {c_np}"
        )));
    }
    let (lhs, gradient_term, k, lp) = flat_terms(graph, f.values(), c, n, p, v0);
    let rhs = c_np * gradient_term + c * k * lp;
    Ok(InequalityReport::new(
        InequalityKind::Flat,
        lhs,
        rhs,
        &[
            ("c", c),
            ("n", n),
            ("p", p),
            ("v0", v0),
            ("C(n,p)", c_np),
            ("K", k),
        ],
    ))
}

/// `(sobolev side, E_p^{1/p}, K(Ω₀), ‖f‖_{p,μ})` for the flat form.
pub(crate) fn flat_terms(
    graph: &WeightedGraph,
    f: &[f64],
    c: f64,
    n: f64,
    p: f64,
    v0: f64,
) -> (f64, f64, f64, f64) {
    let q = n * p / (n - p);
    let sobolev = c / (1.0 + 1.0 / n - 1.0 / p).exp2()
        * power_sum_raw(graph, f, q, Weighting::Unweighted).powf(1.0 / q);
    let gradient = (2.0 * edge_energy(graph, f, p)).powf(1.0 / p);
    let support = crate::graph::Subset::from_indices(
        f.len(),
        f.iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, _)| i),
    );
    let k = k_factor(mu_measure(graph, &support), v0, n);
    let lp = power_sum_raw(graph, f, p, Weighting::Mu).powf(1.0 / p);
    (sobolev, gradient, k, lp)
}

/// Sobolev form `(Σ |f|^p μ)^{2/p} ≤ A E_2(f)` with `p = 2n/(n−2)`.
pub fn check_dagger(
    graph: &WeightedGraph,
    f: &VertexFunction,
    n: f64,
    a: f64,
) -> Result<InequalityReport, InequalityError> {
    f.check_len(graph)?;
    let p = p_from_n(n)?;
    let (lhs, energy) = dagger_sides(graph, f.values(), p);
    Ok(InequalityReport::new(
        InequalityKind::Dagger,
        lhs,
        a * energy,
        &[("n", n), ("p", p), ("A(p)", a)],
    ))
}

/// Nash form `(Σ |f|² μ)^{1+2/n} ≤ B E_2(f) (Σ |f| μ)^{4/n}`.
pub fn check_double_dagger(
    graph: &WeightedGraph,
    f: &VertexFunction,
    n: f64,
    b: f64,
) -> Result<InequalityReport, InequalityError> {
    f.check_len(graph)?;
    let p = p_from_n(n)?;
    let (lhs, rhs) = double_dagger_sides(&Norms::of(graph, f.values()), n);
    Ok(InequalityReport::new(
        InequalityKind::DoubleDagger,
        lhs,
        b * rhs,
        &[("n", n), ("p", p), ("B(p)", b)],
    ))
}

/// Both sides of the interpolation
/// `Σ|f|²μ ≤ (Σ|f|^p μ)^{1/(p−1)} (Σ|f| μ)^{(p−2)/(p−1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Hölder interpolation between the weighted `L¹`, `L²` and `L^p` sums; holds
/// for every `f` and every `p ≥ 2`, with no inequality constant involved.
pub fn holder_step_check(
    graph: &WeightedGraph,
    f: &VertexFunction,
    p: f64,
) -> Result<HolderCheck, InequalityError> {
    f.check_len(graph)?;
    if !(p >= 2.0) || !p.is_finite() {
        return Err(InequalityError::InvalidParameter(format!(
            "Hölder step needs p ≥ 2, got {p}"
        )));
    }
    let lhs = power_sum_raw(graph, f.values(), 2.0, Weighting::Mu);
    let lp = power_sum_raw(graph, f.values(), p, Weighting::Mu);
    let l1 = power_sum_raw(graph, f.values(), 1.0, Weighting::Mu);
    let rhs = lp.powf(1.0 / (p - 1.0)) * l1.powf((p - 2.0) / (p - 1.0));
    Ok(HolderCheck {
        lhs,
        rhs,
        holds: tolerance::holds(lhs, rhs),
    })
}

/// `((1 + 2/n)(1/(p−1))(p/2), (1 + 2/n)(p−2)/(p−1))` at `p = 2n/(n−2)`;
/// algebraically `(1, 4/n)`.
pub fn exponent_identities(n: f64) -> Result<(f64, f64), InequalityError> {
    let p = p_from_n(n)?;
    let s = 1.0 + 2.0 / n;
    Ok((
        s * (1.0 / (p - 1.0)) * (p / 2.0),
        s * ((p - 2.0) / (p - 1.0)),
    ))
}
