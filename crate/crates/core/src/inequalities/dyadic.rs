use serde::Serialize;

use super::{p_from_n, InequalityError};
use crate::calculus::{edge_energy, VertexFunction};
use crate::graph::{mu_measure, Subset, WeightedGraph};

/// `2^k` built from the exponent bits, exact over the whole `f64` range.
pub(crate) fn pow2(k: i32) -> f64 {
    if k > 1023 {
        f64::INFINITY
    } else if k >= -1022 {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else if k >= -1074 {
        f64::from_bits(1u64 << (k + 1074))
    } else {
        0.0
    }
}

/// `⌊log₂ x⌋` for finite `x > 0`, exact (read from the exponent bits).
pub(crate) fn dyadic_level(x: f64) -> i32 {
    debug_assert!(x > 0.0 && x.is_finite());
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        let mantissa = bits & ((1u64 << 52) - 1);
        -1074 + (63 - mantissa.leading_zeros() as i32)
    } else {
        exp - 1023
    }
}

/// Dyadic truncation `f_k`: 0 where `|f| < 2^k`, `|f| − 2^k` where
/// `2^k ≤ |f| < 2^{k+1}`, and `2^k` where `|f| ≥ 2^{k+1}`. Equivalently
/// `clamp(|f|, 2^k, 2^{k+1}) − 2^k`.
pub fn truncation(f: &VertexFunction, k: i32) -> VertexFunction {
    let (lo, hi) = (pow2(k), pow2(k + 1));
    let values = f
        .values()
        .iter()
        .map(|v| {
            let a = v.abs();
            if a < lo {
                0.0
            } else if a < hi {
                a - lo
            } else {
                lo
            }
        })
        .collect();
    VertexFunction::new(values).expect("truncations of finite values are finite")
}

/// One level `k` of the decomposition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DyadicLevel {
    pub k: i32,
    /// `U_k = {|f| < 2^k}`
    pub u: Subset,
    /// `V_k = {2^k ≤ |f| < 2^{k+1}}`
    pub v: Subset,
    /// `W_k = {|f| ≥ 2^{k+1}}`
    pub w: Subset,
    pub f_k: VertexFunction,
    /// `a_k = 2^{pk} μ(W_{k−1})`
    pub a_k: f64,
    /// `b_k = Σ_{x,y ∈ V_k, y~x} |f_k(y) − f_k(x)|² σ_xy`, ordered pairs with
    /// both endpoints in `V_k`.
    pub b_k: f64,
}

/// Level sets and truncations of `f` at dyadic heights.
///
/// `levels` covers every `k` with `V_k` nonempty plus one empty level on each
/// side. Outside that window `b_k = 0`; above it `a_k = 0`, while below it
/// `W_{k−1} = supp f`, so `a_k = 2^{pk} μ(supp f)` forms a geometric tail whose
/// sum is `lower_tail_a`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DyadicDecomposition {
    pub n: f64,
    pub p: f64,
    /// Inclusive `(k_lo, k_hi)`; `None` when `f ≡ 0`.
    pub k_range: Option<(i32, i32)>,
    pub levels: Vec<DyadicLevel>,
    /// `Σ_{k < k_lo} a_k`.
    pub lower_tail_a: f64,
}

impl DyadicDecomposition {
    /// `Σ_{k∈ℤ} a_k`, including the tail below the window.
    pub fn sum_a(&self) -> f64 {
        self.lower_tail_a + self.levels.iter().map(|l| l.a_k).sum::<f64>()
    }

    /// `Σ_{k∈ℤ} b_k`.
    pub fn sum_b(&self) -> f64 {
        self.levels.iter().map(|l| l.b_k).sum()
    }

    pub fn level(&self, k: i32) -> Option<&DyadicLevel> {
        let (lo, _) = self.k_range?;
        self.levels.get(usize::try_from(k - lo).ok()?)
    }
}

/// `μ({x : |f(x)| ≥ t})`.
pub(crate) fn mu_at_least(graph: &WeightedGraph, f: &[f64], t: f64) -> f64 {
    f.iter()
        .enumerate()
        .filter(|(_, v)| v.abs() >= t)
        .map(|(x, _)| graph.mu(x))
        .sum()
}

/// `a_k = 2^{pk} μ(W_{k−1}) = 2^{pk} μ({|f| ≥ 2^k})`.
pub(crate) fn a_coefficient(graph: &WeightedGraph, f: &[f64], p: f64, k: i32) -> f64 {
    let m = mu_at_least(graph, f, pow2(k));
    if m == 0.0 {
        0.0
    } else {
        (p * k as f64).exp2() * m
    }
}

/// Inclusive range of `⌊log₂|f(x)|⌋` over the support.
pub(crate) fn level_span(f: &[f64]) -> Option<(i32, i32)> {
    f.iter()
        .filter(|v| **v != 0.0)
        .map(|v| dyadic_level(v.abs()))
        .fold(None, |acc, k| match acc {
            None => Some((k, k)),
            Some((lo, hi)) => Some((lo.min(k), hi.max(k))),
        })
}

pub fn dyadic_decompose(
    graph: &WeightedGraph,
    f: &VertexFunction,
    n: f64,
) -> Result<DyadicDecomposition, InequalityError> {
    f.check_len(graph)?;
    let p = p_from_n(n)?;
    let values = f.values();
    let vc = values.len();
    let Some((k_min, k_max)) = level_span(values) else {
        return Ok(DyadicDecomposition {
            n,
            p,
            k_range: None,
            levels: Vec::new(),
            lower_tail_a: 0.0,
        });
    };
    let (k_lo, k_hi) = ((k_min - 1).max(-1074), k_max + 1);
    let mut levels = Vec::with_capacity((k_hi - k_lo + 1) as usize);
    for k in k_lo..=k_hi {
        let (lo, hi) = (pow2(k), pow2(k + 1));
        let in_band = |pred: &dyn Fn(f64) -> bool| {
            Subset::from_indices(vc, (0..vc).filter(|&x| pred(values[x].abs())))
        };
        let u = in_band(&|a| a < lo);
        let v = in_band(&|a| lo <= a && a < hi);
        let w = in_band(&|a| a >= hi);
        let f_k = truncation(f, k);
        let fk = f_k.values();
        let b_k = 2.0
            * graph
                .edges()
                .iter()
                .filter(|e| v.contains(e.u) && v.contains(e.v))
                .map(|e| (fk[e.v] - fk[e.u]).powi(2) * e.sigma)
                .sum::<f64>();
        levels.push(DyadicLevel {
            k,
            a_k: a_coefficient(graph, values, p, k),
            b_k,
            u,
            v,
            w,
            f_k,
        });
    }
    let support = f.support();
    let lower_tail_a = mu_measure(graph, &support) * (p * k_lo as f64).exp2() / (p.exp2() - 1.0);
    Ok(DyadicDecomposition {
        n,
        p,
        k_range: Some((k_lo, k_hi)),
        levels,
        lower_tail_a,
    })
}

/// All nonzero truncations `f_k` over the levels where `f` has mass, plus
/// the level just below (where `f_k = 2^k 𝟙_{supp f}`).
pub(crate) fn nonzero_truncations(f: &VertexFunction) -> Vec<VertexFunction> {
    let Some((k_min, k_max)) = level_span(f.values()) else {
        return Vec::new();
    };
    ((k_min - 1).max(-1074)..=k_max)
        .map(|k| truncation(f, k))
        .filter(|t| !t.is_zero())
        .collect()
}

/// `E_2(f_k)` with the full ordered-pair sum.
pub(crate) fn full_energy(graph: &WeightedGraph, f: &VertexFunction) -> f64 {
    2.0 * edge_energy(graph, f.values(), 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_are_exact() {
        assert_eq!(dyadic_level(1.0), 0);
        assert_eq!(dyadic_level(1.999_999), 0);
        assert_eq!(dyadic_level(2.0), 1);
        assert_eq!(dyadic_level(0.75), -1);
        assert_eq!(dyadic_level(f64::MIN_POSITIVE), -1022);
        assert_eq!(dyadic_level(f64::MIN_POSITIVE / 4.0), -1024);
        assert_eq!(dyadic_level(5e-324), -1074);
        for k in [-1074, -1030, -5, 0, 7, 1023] {
            assert_eq!(dyadic_level(pow2(k)), k);
            assert_eq!(pow2(k), 2f64.powf(k as f64));
        }
    }

    #[test]
    fn two_value_function() {
        // f ∈ {1, 3} on a path: V_0 = {|f| ∈ [1,2)}, W_0 = {|f| ≥ 2}.
        let g = WeightedGraph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
        let f = VertexFunction::new(vec![1.0, 3.0, -1.0]).unwrap();
        let d = dyadic_decompose(&g, &f, 4.0).unwrap();
        assert_eq!(d.k_range, Some((-1, 2)));
        let l0 = d.level(0).unwrap();
        assert_eq!(l0.v.to_vec(), [0, 2]);
        assert_eq!(l0.w.to_vec(), [1]);
        assert!(l0.u.is_empty());
        assert_eq!(l0.f_k.values(), [0.0, 1.0, 0.0]);
        assert_eq!(l0.b_k, 0.0);
        let l1 = d.level(1).unwrap();
        assert_eq!(l1.v.to_vec(), [1]);
        assert_eq!(l1.f_k.values(), [0.0, 1.0, 0.0]);
        // a_1 = 2^{4} μ({|f| ≥ 2}) = 16 · 2
        assert_eq!(l1.a_k, 32.0);
    }

    #[test]
    fn zero_function() {
        let g = WeightedGraph::unweighted(2, [(0, 1)]).unwrap();
        let d = dyadic_decompose(&g, &VertexFunction::zeros(2), 3.0).unwrap();
        assert_eq!(d.k_range, None);
        assert_eq!(d.sum_a(), 0.0);
    }
}
