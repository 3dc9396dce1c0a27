use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::IsoError;
use crate::graph::{boundary, mu_measure, sigma_measure, total_edge_weight, Subset, WeightedGraph};
use crate::tolerance;

/// Largest vertex count accepted by [`ScanMode::Exhaustive`].
pub const EXHAUSTIVE_VERTEX_LIMIT: usize = 24;

/// Violations kept verbatim in a report; the rest are only counted.
const MAX_LISTED_VIOLATIONS: usize = 64;

/// Subsets per work unit in the exhaustive scan. Each unit recomputes its
/// starting state from scratch, bounding accumulated rounding.
const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScanMode {
    /// All `2^|V| − 2` proper nonempty subsets.
    Exhaustive,
    /// Every singleton and singleton complement, plus `count` random subsets
    /// drawn from `seed`.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub subset: Subset,
    pub boundary_weight: f64,
    pub rhs: f64,
}

/// Result of checking `σ(∂Ω) ≥ c μ(Ω)^{1−1/n}` over proper nonempty `Ω`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoReport {
    pub c: f64,
    pub n: f64,
    /// `ω = min_x μ_x`.
    pub omega_min_vertex_weight: f64,
    /// `ω′ = min σ_xy`.
    pub omega_prime_min_edge_weight: Option<f64>,
    pub worst_subset: Option<Subset>,
    /// `min σ(∂Ω) / μ(Ω)^{1−1/n}` over the checked subsets.
    pub worst_ratio: Option<f64>,
    pub subsets_checked: u64,
    pub mode: ScanMode,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

struct Candidate {
    ratio: f64,
    key: u64,
}

#[derive(Default)]
struct Partial {
    best: Option<Candidate>,
    checked: u64,
    violation_count: u64,
    /// `(key, boundary weight, rhs)` in increasing key order.
    violations: Vec<(u64, f64, f64)>,
}

/// Incremental sums drift by a few ulps per step; anything within this
/// relative margin of a decision is re-summed directly before it counts.
const DRIFT_MARGIN: f64 = 1e-9;

impl Partial {
    fn visit(&mut self, key: u64, bw: f64, mu: f64, c: f64, exponent: f64) {
        self.checked += 1;
        self.decide(key, bw, mu, c, exponent);
    }

    /// As [`Partial::visit`], but `(bw, mu)` are running sums; `exact`
    /// recomputes them whenever the outcome could hinge on the drift.
    fn visit_approx(
        &mut self,
        key: u64,
        (bw, mu): (f64, f64),
        c: f64,
        exponent: f64,
        exact: impl FnOnce() -> (f64, f64),
    ) {
        self.checked += 1;
        let scaled = mu.powf(exponent);
        let slack = DRIFT_MARGIN * (1.0 + bw.abs() + c * scaled);
        let near_violation = bw < c * scaled + slack;
        let near_best = match &self.best {
            None => true,
            Some(b) => bw / scaled <= b.ratio + DRIFT_MARGIN * (1.0 + b.ratio.abs()),
        };
        if near_violation || near_best {
            let (bw, mu) = exact();
            self.decide(key, bw, mu, c, exponent);
        }
    }

    fn decide(&mut self, key: u64, bw: f64, mu: f64, c: f64, exponent: f64) {
        let scaled = mu.powf(exponent);
        let rhs = c * scaled;
        if !tolerance::holds(rhs, bw) {
            self.violation_count += 1;
            if self.violations.len() < MAX_LISTED_VIOLATIONS {
                self.violations.push((key, bw, rhs));
            }
        }
        if scaled > 0.0 {
            let ratio = bw / scaled;
            let better = match &self.best {
                None => true,
                Some(b) => ratio < b.ratio || (ratio == b.ratio && key < b.key),
            };
            if better {
                self.best = Some(Candidate { ratio, key });
            }
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.sort_by_key(|v| v.0);
        self.violations.truncate(MAX_LISTED_VIOLATIONS);
        if let Some(o) = other.best {
            let better = match &self.best {
                None => true,
                Some(b) => o.ratio < b.ratio || (o.ratio == b.ratio && o.key < b.key),
            };
            if better {
                self.best = Some(o);
            }
        }
        self
    }
}

fn mask_state(graph: &WeightedGraph, mask: u64) -> (f64, f64) {
    let inside = |v: usize| (mask >> v) & 1 == 1;
    let bw = graph
        .edges()
        .iter()
        .filter(|e| inside(e.u) != inside(e.v))
        .map(|e| e.sigma)
        .sum();
    let mu = (0..graph.vertex_count())
        .filter(|&v| inside(v))
        .map(|v| graph.mu(v))
        .sum();
    (bw, mu)
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Visits every nonempty proper subset in Gray-code order, updating the
/// boundary weight and measure incrementally. Keys are the subset masks.
/// Reported values are always directly summed, never running sums.
fn scan_exhaustive(graph: &WeightedGraph, c: f64, exponent: f64) -> Partial {
    let n = graph.vertex_count();
    let total = 1u64 << n;
    let full = total - 1;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = (chunk * CHUNK).max(1);
            let end = ((chunk + 1) * CHUNK).min(total);
            let mut part = Partial::default();
            let mut mask = gray(start);
            let (mut bw, mut mu) = mask_state(graph, mask);
            for i in start..end {
                if i > start {
                    let v = i.trailing_zeros() as usize;
                    let v_in = (mask >> v) & 1 == 1;
                    for (u, s) in graph.neighbors(v) {
                        let u_in = (mask >> u) & 1 == 1;
                        bw += if u_in == v_in { s } else { -s };
                    }
                    mu += if v_in { -graph.mu(v) } else { graph.mu(v) };
                    mask ^= 1 << v;
                }
                if mask != full {
                    part.visit_approx(mask, (bw, mu), c, exponent, || mask_state(graph, mask));
                }
            }
            part
        })
        .reduce(Partial::default, Partial::merge)
}

fn sampled_subsets(n: usize, count: usize, seed: u64) -> Vec<Subset> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for v in 0..n {
        out.push(Subset::from_indices(n, [v]));
    }
    for v in 0..n {
        out.push(Subset::from_indices(n, (0..n).filter(|&u| u != v)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < 2 * n + count {
        let s = Subset::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)));
        if !s.is_empty() && s.len() < n {
            out.push(s);
        }
    }
    out
}

struct ScanOutcome {
    partial: Partial,
    subsets: Option<Vec<Subset>>,
}

impl ScanOutcome {
    fn subset(&self, n: usize, key: u64) -> Subset {
        match &self.subsets {
            None => Subset::from_mask(n, key),
            Some(list) => list[key as usize].clone(),
        }
    }
}

fn scan(graph: &WeightedGraph, c: f64, n: f64, mode: ScanMode) -> Result<ScanOutcome, IsoError> {
    if !(n > 0.0) {
        return Err(IsoError::InvalidParameter(format!(
            "n = {n} must be positive"
        )));
    }
    if !(c.is_finite() && c >= 0.0) {
        return Err(IsoError::InvalidParameter(format!(
            "c = {c} must be non-negative"
        )));
    }
    let exponent = 1.0 - 1.0 / n;
    let count = graph.vertex_count();
    match mode {
        ScanMode::Exhaustive => {
            if count > EXHAUSTIVE_VERTEX_LIMIT {
                return Err(IsoError::BudgetExceeded {
                    limit: EXHAUSTIVE_VERTEX_LIMIT,
                    count,
                });
            }
            Ok(ScanOutcome {
                partial: scan_exhaustive(graph, c, exponent),
                subsets: None,
            })
        }
        ScanMode::Sampled {
            count: samples,
            seed,
        } => {
            let subsets = sampled_subsets(count, samples, seed);
            let partial = subsets
                .par_iter()
                .enumerate()
                .map(|(i, s)| {
                    let mut part = Partial::default();
                    let bw = sigma_measure(graph, &boundary(graph, s));
                    part.visit(i as u64, bw, mu_measure(graph, s), c, exponent);
                    part
                })
                .reduce(Partial::default, Partial::merge);
            Ok(ScanOutcome {
                partial,
                subsets: Some(subsets),
            })
        }
    }
}

/// Checks the isoperimetric inequality with constant `c` and dimension `n`
/// over proper nonempty subsets (`∅` and `V` are excluded: `∂V = ∅`).
pub fn verify_isoperimetric(
    graph: &WeightedGraph,
    c: f64,
    n: f64,
    mode: ScanMode,
) -> Result<IsoReport, IsoError> {
    let outcome = scan(graph, c, n, mode)?;
    let vc = graph.vertex_count();
    let violations = outcome
        .partial
        .violations
        .iter()
        .map(|&(key, bw, rhs)| Violation {
            subset: outcome.subset(vc, key),
            boundary_weight: bw,
            rhs,
        })
        .collect();
    let best = outcome.partial.best.as_ref();
    Ok(IsoReport {
        c,
        n,
        omega_min_vertex_weight: graph.min_vertex_weight(),
        omega_prime_min_edge_weight: graph.min_edge_weight(),
        worst_subset: best.map(|b| outcome.subset(vc, b.key)),
        worst_ratio: best.map(|b| b.ratio),
        subsets_checked: outcome.partial.checked,
        mode,
        violation_count: outcome.partial.violation_count,
        violations,
        passed: outcome.partial.violation_count == 0,
    })
}

/// `min σ(∂Ω) / μ(Ω)^{1−1/n}` over the subsets of `mode`: the sharpest `c`
/// for which the inequality holds on them.
pub fn empirical_iso_constant(
    graph: &WeightedGraph,
    n: f64,
    mode: ScanMode,
) -> Result<f64, IsoError> {
    scan(graph, 0.0, n, mode)?
        .partial
        .best
        .map(|b| b.ratio)
        .ok_or(IsoError::NoProperSubset)
}

/// `σ(E) ≥ c μ(V)^{1−1/n}`: the inequality evaluated with the total edge
/// weight standing in for the (empty) boundary of the full vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeTotalCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn edge_total_check(graph: &WeightedGraph, c: f64, n: f64) -> EdgeTotalCheck {
    let lhs = total_edge_weight(graph);
    let rhs = c * mu_measure(graph, &Subset::full(graph.vertex_count())).powf(1.0 - 1.0 / n);
    EdgeTotalCheck {
        lhs,
        rhs,
        holds: tolerance::holds(rhs, lhs),
    }
}
