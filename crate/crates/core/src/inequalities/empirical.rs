//! Smallest constants consistent with a finite family of test functions.
//!
//! Each estimate is `max_f lhs(f) / rhs(f)` with the constant factored out, so
//! it is a lower bound for the best constant on the graph.

use rayon::prelude::*;
use serde::Serialize;

use super::{dagger_sides, double_dagger_sides, flat_terms, p_from_n, InequalityError, Norms};
use crate::calculus::VertexFunction;
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalConstant {
    pub value: f64,
    /// Index of the maximizing function; ties go to the smallest index.
    pub argmax: Option<usize>,
    pub evaluated: usize,
    /// Members with zero energy but a positive left side. They admit no finite
    /// constant and are left out of the maximum.
    pub skipped_degenerate: usize,
}

enum Outcome {
    Ratio(f64),
    Degenerate,
}

fn ratio_of(lhs: f64, rhs: f64) -> Outcome {
    if rhs > 0.0 {
        Outcome::Ratio(lhs / rhs)
    } else if lhs > 0.0 {
        Outcome::Degenerate
    } else {
        Outcome::Ratio(0.0)
    }
}

fn collect(outcomes: Vec<Outcome>) -> EmpiricalConstant {
    let mut best = EmpiricalConstant {
        value: 0.0,
        argmax: None,
        evaluated: outcomes.len(),
        skipped_degenerate: 0,
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Degenerate => best.skipped_degenerate += 1,
            Outcome::Ratio(r) => {
                if best.argmax.is_none() || r > best.value {
                    best.value = r;
                    best.argmax = Some(i);
                }
            }
        }
    }
    best
}

fn check_family(graph: &WeightedGraph, family: &[VertexFunction]) -> Result<(), InequalityError> {
    family
        .iter()
        .try_for_each(|f| f.check_len(graph).map_err(Into::into))
}

/// Smallest `A` making the Sobolev form hold on every member.
pub fn empirical_a(
    graph: &WeightedGraph,
    family: &[VertexFunction],
    n: f64,
) -> Result<EmpiricalConstant, InequalityError> {
    let p = p_from_n(n)?;
    check_family(graph, family)?;
    Ok(collect(
        family
            .par_iter()
            .map(|f| {
                let (lhs, energy) = dagger_sides(graph, f.values(), p);
                ratio_of(lhs, energy)
            })
            .collect(),
    ))
}

/// Smallest `B` making the Nash form hold on every member.
pub fn empirical_b(
    graph: &WeightedGraph,
    family: &[VertexFunction],
    n: f64,
) -> Result<EmpiricalConstant, InequalityError> {
    p_from_n(n)?;
    check_family(graph, family)?;
    Ok(collect(
        family
            .par_iter()
            .map(|f| {
                let (lhs, rhs) = double_dagger_sides(&Norms::of(graph, f.values()), n);
                ratio_of(lhs, rhs)
            })
            .collect(),
    ))
}

/// Smallest `C(n,p) ≥ 0` making the flat form hold on every member, given `c`
/// and `v₀`. A member with zero gradient term whose left side still exceeds
/// the `K` term (a constant function, typically) admits no finite `C`.
pub fn empirical_c(
    graph: &WeightedGraph,
    family: &[VertexFunction],
    c: f64,
    n: f64,
    p: f64,
    v0: f64,
) -> Result<EmpiricalConstant, InequalityError> {
    if !(p >= 1.0 && p < n) || !n.is_finite() {
        return Err(InequalityError::ExponentRange { p, n });
    }
    if !(v0 > 0.0) || !(c >= 0.0) {
        return Err(InequalityError::InvalidParameter(format!(
            "need v₀ > 0 and c ≥ 0; got v₀ = {v0}, c = {c}"
        )));
    }
    check_family(graph, family)?;
    let outcomes: Vec<Outcome> = family
        .par_iter()
        .map(|f| {
            let (lhs, gradient, k, lp) = flat_terms(graph, f.values(), c, n, p, v0);
            let needed = lhs - c * k * lp;
            if needed <= 0.0 {
                Outcome::Ratio(0.0)
            } else {
                ratio_of(needed, gradient)
            }
        })
        .collect();
    if let Some(index) = outcomes
        .iter()
        .position(|o| matches!(o, Outcome::Degenerate))
    {
        return Err(InequalityError::NoFiniteC { index });
    }
    Ok(collect(outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn constant_function_has_no_finite_c() {
        let fam = [VertexFunction::constant(3, 1.0)];
        // μ(V) = 6 ≤ v₀ makes K vanish, leaving nothing to absorb the left side.
        assert_eq!(
            empirical_c(&triangle(), &fam, 0.1, 4.0, 2.0, 6.0).unwrap_err(),
            InequalityError::NoFiniteC { index: 0 }
        );
        // A small v₀ lets the K term cover it.
        assert_eq!(
            empirical_c(&triangle(), &fam, 0.1, 4.0, 2.0, 0.5)
                .unwrap()
                .value,
            0.0
        );
    }

    #[test]
    fn constants_are_skipped_for_a_and_b() {
        let fam = [
            VertexFunction::constant(3, 1.0),
            VertexFunction::new(vec![1.0, 0.0, 0.0]).unwrap(),
        ];
        let a = empirical_a(&triangle(), &fam, 4.0).unwrap();
        assert_eq!(
            (a.argmax, a.skipped_degenerate, a.evaluated),
            (Some(1), 1, 2)
        );
        // 𝟙_0 on the triangle: (Σ f⁴ μ)^{1/2} = √2, E_2 = 4.
        assert_eq!(a.value, 2f64.sqrt() / 4.0);
        let b = empirical_b(&triangle(), &fam, 4.0).unwrap();
        // (2)^{3/2} / (4 · 2) = 2^{-3/2}
        assert!((b.value - 2f64.powf(-1.5)).abs() < 1e-15);
    }

    #[test]
    fn ties_prefer_first() {
        let fam: Vec<_> = (0..3)
            .map(|x| VertexFunction::from_fn(3, |i| if i == x { 1.0 } else { 0.0 }).unwrap())
            .collect();
        assert_eq!(empirical_a(&triangle(), &fam, 4.0).unwrap().argmax, Some(0));
    }

    #[test]
    fn zero_function_counts_as_zero() {
        let e = empirical_b(&triangle(), &[VertexFunction::zeros(3)], 3.0).unwrap();
        assert_eq!((e.value, e.argmax, e.skipped_degenerate), (0.0, Some(0), 0));
    }
}
