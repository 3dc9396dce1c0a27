use std::fmt;

use serde::Serialize;

use super::{nu_with, IsoError};
use crate::graph::{ball_from_distances, is_connected, DistanceMatrix, WeightedGraph};
use crate::tolerance;

/// Parameters `(δ, ι, R₀)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PParams {
    pub delta: f64,
    pub iota: f64,
    pub r0: f64,
}

impl PParams {
    pub fn new(delta: f64, iota: f64, r0: f64) -> Self {
        PParams { delta, iota, r0 }
    }

    fn validate(&self) -> Result<(), IsoError> {
        let ok = self.delta.is_finite()
            && self.delta > 0.0
            && self.iota.is_finite()
            && self.iota >= 1.0
            && self.r0.is_finite()
            && self.r0 > 0.0;
        if ok {
            Ok(())
        } else {
            Err(IsoError::InvalidParameter(format!(
                "need δ > 0, ι ≥ 1, R₀ > 0; got {self:?}"
            )))
        }
    }
}

type PotentialFn = dyn Fn(usize, usize, &DistanceMatrix) -> f64 + Send + Sync;

/// A family of potentials `q_ξ(x)`.
pub struct Potential {
    name: String,
    eval: Box<PotentialFn>,
}

impl Potential {
    /// `q_ξ(x) = ρ_ξ(x)² / 2`.
    pub fn half_squared_distance() -> Self {
        Potential {
            name: "half_squared_distance".into(),
            eval: Box::new(|xi, x, d| {
                let r = d.get(xi, x).as_f64();
                0.5 * r * r
            }),
        }
    }

    /// `q_ξ(x) = ρ_ξ(x)²`.
    pub fn squared_distance() -> Self {
        Potential {
            name: "squared_distance".into(),
            eval: Box::new(|xi, x, d| {
                let r = d.get(xi, x).as_f64();
                r * r
            }),
        }
    }

    /// Caller-supplied `q(ξ, x)`.
    pub fn custom(
        name: impl Into<String>,
        q: impl Fn(usize, usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Potential {
            name: name.into(),
            eval: Box::new(move |xi, x, _| q(xi, x)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Candidates tried by [`check_p`] when no potential is given, in order.
    pub fn default_candidates() -> Vec<Potential> {
        vec![Self::half_squared_distance(), Self::squared_distance()]
    }
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Potential")
            .field("name", &self.name)
            .finish()
    }
}

/// First violating configuration of a condition: the checked `value` fails
/// to respect `bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub xi: Option<usize>,
    pub x: Option<usize>,
    pub y: Option<usize>,
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionResult {
    pub passed: bool,
    /// Number of configurations evaluated.
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl ConditionResult {
    fn new() -> Self {
        ConditionResult {
            passed: true,
            checked: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }
}

/// Outcome of one potential tried during a default-candidate search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialAttempt {
    pub potential: String,
    pub passed: bool,
    pub failed_conditions: Vec<&'static str>,
}

/// Machine-checkable record of the P(δ, ι, R₀) conditions:
///
/// - `gradient_bound` (i): `|∇_xy ρ_ξ| ≤ 1` for all ξ and adjacent `x ~ y`;
/// - `potential_positive` (ii.1): `q_ξ ≥ 0`, zero exactly at `ξ`;
/// - `potential_gradient` (ii.2): `|∇_xy q_ξ| ≤ ρ_ξ(x) + ι` for all ordered
///   `x, y ∈ B_ξ(R₀)`;
/// - `potential_laplacian` (ii.3): `Δq_ξ(x) ≥ δ` for `x ∈ B_ξ(R₀)`;
/// - `dimension` (iii): `n = δ ν_{R₀+1} ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PCertificate {
    pub delta: f64,
    pub iota: f64,
    pub r0: f64,
    pub nu_r0_plus_1: Option<f64>,
    pub n: Option<f64>,
    pub potential: String,
    pub gradient_bound: ConditionResult,
    pub potential_positive: ConditionResult,
    pub potential_gradient: ConditionResult,
    pub potential_laplacian: ConditionResult,
    pub dimension: ConditionResult,
    pub passed: bool,
    /// Every potential evaluated, in order; the reported conditions belong
    /// to the first passing one, else to the first one tried.
    pub attempts: Vec<PotentialAttempt>,
}

struct PotentialConditions {
    positive: ConditionResult,
    gradient: ConditionResult,
    laplacian: ConditionResult,
}

impl PotentialConditions {
    fn passed(&self) -> bool {
        self.positive.passed && self.gradient.passed && self.laplacian.passed
    }

    fn failed(&self) -> Vec<&'static str> {
        [
            ("potential_positive", &self.positive),
            ("potential_gradient", &self.gradient),
            ("potential_laplacian", &self.laplacian),
        ]
        .into_iter()
        .filter(|(_, c)| !c.passed)
        .map(|(name, _)| name)
        .collect()
    }
}

fn check_potential(
    graph: &WeightedGraph,
    dm: &DistanceMatrix,
    params: &PParams,
    q: &Potential,
) -> PotentialConditions {
    let n = graph.vertex_count();
    let mut positive = ConditionResult::new();
    let mut gradient = ConditionResult::new();
    let mut laplacian = ConditionResult::new();
    for xi in 0..n {
        let qv: Vec<f64> = (0..n).map(|x| (q.eval)(xi, x, dm)).collect();
        for (x, &value) in qv.iter().enumerate() {
            let ok = if x == xi { value == 0.0 } else { value > 0.0 };
            positive.record(ok, || Witness {
                xi: Some(xi),
                x: Some(x),
                y: None,
                value,
                bound: 0.0,
            });
        }
        let ball = ball_from_distances(dm.row(xi), params.r0);
        for x in ball.iter() {
            let rho_x = dm.get(xi, x).as_f64();
            for y in ball.iter() {
                let value = (qv[y] - qv[x]).abs();
                let bound = rho_x + params.iota;
                gradient.record(tolerance::holds(value, bound), || Witness {
                    xi: Some(xi),
                    x: Some(x),
                    y: Some(y),
                    value,
                    bound,
                });
            }
            let mu = graph.mu(x);
            let value = if mu > 0.0 {
                graph
                    .neighbors(x)
                    .map(|(y, s)| (qv[y] - qv[x]) * s)
                    .sum::<f64>()
                    / mu
            } else {
                f64::NAN
            };
            laplacian.record(tolerance::holds(params.delta, value), || Witness {
                xi: Some(xi),
                x: Some(x),
                y: None,
                value,
                bound: params.delta,
            });
        }
    }
    PotentialConditions {
        positive,
        gradient,
        laplacian,
    }
}

/// Evaluates the P(δ, ι, R₀) conditions exhaustively on a connected graph.
///
/// With `potential = None`, the candidates of [`Potential::default_candidates`]
/// are tried in order and the first that satisfies all potential conditions
/// is reported; every attempt is listed in `attempts`. Condition failures
/// are recorded in the certificate, not returned as errors.
pub fn check_p(
    graph: &WeightedGraph,
    params: PParams,
    potential: Option<&Potential>,
) -> Result<PCertificate, IsoError> {
    params.validate()?;
    if !is_connected(graph) {
        return Err(IsoError::Disconnected);
    }
    let dm = DistanceMatrix::new(graph);
    let n = graph.vertex_count();

    let mut gradient_bound = ConditionResult::new();
    for xi in 0..n {
        for e in graph.edges() {
            for (x, y) in [(e.u, e.v), (e.v, e.u)] {
                let value = (dm.get(xi, y).as_f64() - dm.get(xi, x).as_f64()).abs();
                gradient_bound.record(value <= 1.0, || Witness {
                    xi: Some(xi),
                    x: Some(x),
                    y: Some(y),
                    value,
                    bound: 1.0,
                });
            }
        }
    }

    let nu_value = nu_with(graph, &dm, params.r0 + 1.0).ok().map(|v| v.value);
    let dim = nu_value.map(|v| params.delta * v);
    let mut dimension = ConditionResult::new();
    let value = dim.unwrap_or(f64::NAN);
    dimension.record(tolerance::holds(1.0, value), || Witness {
        xi: None,
        x: None,
        y: None,
        value,
        bound: 1.0,
    });

    let defaults;
    let candidates: Vec<&Potential> = match potential {
        Some(q) => vec![q],
        None => {
            defaults = Potential::default_candidates();
            defaults.iter().collect()
        }
    };
    let mut attempts = Vec::new();
    let mut chosen: Option<(String, PotentialConditions)> = None;
    for q in candidates {
        let conditions = check_potential(graph, &dm, &params, q);
        attempts.push(PotentialAttempt {
            potential: q.name().to_string(),
            passed: conditions.passed(),
            failed_conditions: conditions.failed(),
        });
        let pass = conditions.passed();
        if chosen.is_none() || pass {
            chosen = Some((q.name().to_string(), conditions));
        }
        if pass {
            break;
        }
    }
    let (potential, conditions) = chosen.expect("at least one candidate");

    let passed = gradient_bound.passed && conditions.passed() && dimension.passed;
    Ok(PCertificate {
        delta: params.delta,
        iota: params.iota,
        r0: params.r0,
        nu_r0_plus_1: nu_value,
        n: dim,
        potential,
        gradient_bound,
        potential_positive: conditions.positive,
        potential_gradient: conditions.gradient,
        potential_laplacian: conditions.laplacian,
        dimension,
        passed,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_fails_laplacian_condition_at_large_delta() {
        let g = WeightedGraph::unweighted(2, [(0, 1)]).unwrap();
        let cert = check_p(&g, PParams::new(2.0, 1.0, 1.0), None).unwrap();
        assert!(!cert.passed);
        assert!(cert.gradient_bound.passed);
        assert!(cert.dimension.passed);
        assert_eq!(cert.n, Some(2.0));
        let w = cert.potential_laplacian.witness.unwrap();
        // Δq_0(0) = q_0(1) = 1/2 for the half-squared potential.
        assert_eq!((w.xi, w.x, w.value, w.bound), (Some(0), Some(0), 0.5, 2.0));
        assert_eq!(cert.potential, "half_squared_distance");
        assert_eq!(cert.attempts.len(), 2);
        assert!(cert.attempts.iter().all(|a| !a.passed));
    }

    #[test]
    fn invalid_parameters() {
        let g = WeightedGraph::unweighted(2, [(0, 1)]).unwrap();
        for p in [
            PParams::new(0.0, 1.0, 1.0),
            PParams::new(1.0, 0.5, 1.0),
            PParams::new(1.0, 1.0, 0.0),
        ] {
            assert!(matches!(
                check_p(&g, p, None),
                Err(IsoError::InvalidParameter(_))
            ));
        }
        let split = WeightedGraph::unweighted(3, [(0, 1)]).unwrap();
        assert_eq!(
            check_p(&split, PParams::new(1.0, 1.0, 1.0), None).unwrap_err(),
            IsoError::Disconnected
        );
    }

    #[test]
    fn custom_potential_failing_positivity() {
        let g = WeightedGraph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
        let q = Potential::custom("zero", |_, _| 0.0);
        let cert = check_p(&g, PParams::new(1.0, 1.0, 1.0), Some(&q)).unwrap();
        assert!(!cert.potential_positive.passed);
        assert_eq!(cert.potential, "zero");
        assert_eq!(cert.attempts.len(), 1);
    }
}
