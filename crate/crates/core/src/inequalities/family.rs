use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dyadic::nonzero_truncations;
use super::InequalityError;
use crate::calculus::VertexFunction;
use crate::graph::{Subset, WeightedGraph};

/// Subset indicators are enumerated only up to this many vertices.
pub const SUBSET_FAMILY_LIMIT: usize = 16;

/// Which test functions to generate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    /// `𝟙_x` for every vertex.
    pub vertex_indicators: bool,
    /// `𝟙_Ω` for every nonempty proper `Ω` (skipped above [`SUBSET_FAMILY_LIMIT`]).
    pub subset_indicators: bool,
    /// Number of random functions.
    pub random: usize,
    pub seed: u64,
    /// Add the nonzero dyadic truncations of every generated function.
    pub truncations: bool,
}

impl Default for FamilySpec {
    fn default() -> Self {
        FamilySpec {
            vertex_indicators: true,
            subset_indicators: true,
            random: 200,
            seed: 0,
            truncations: true,
        }
    }
}

impl FamilySpec {
    /// Parses a comma list of `indicators`, `subsets`, `random`, `random:N`,
    /// `truncations`, `default`. `count` applies to a bare `random`.
    pub fn parse(s: &str, count: usize, seed: u64) -> Result<Self, InequalityError> {
        let mut spec = FamilySpec {
            vertex_indicators: false,
            subset_indicators: false,
            random: 0,
            seed,
            truncations: false,
        };
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token.to_ascii_lowercase().as_str() {
                "indicators" => spec.vertex_indicators = true,
                "subsets" => spec.subset_indicators = true,
                "truncations" => spec.truncations = true,
                "random" => spec.random = count,
                "default" => {
                    spec = FamilySpec {
                        random: count,
                        seed,
                        ..FamilySpec::default()
                    }
                }
                other => match other.strip_prefix("random:").map(str::parse::<usize>) {
                    Some(Ok(n)) => spec.random = n,
                    _ => return Err(InequalityError::UnknownFamily(token.to_string())),
                },
            }
        }
        Ok(spec)
    }

    /// Generates the family. Exactly constant functions (all values equal,
    /// including `0`) are dropped and counted.
    pub fn generate(&self, graph: &WeightedGraph) -> Family {
        let n = graph.vertex_count();
        let mut base = Vec::new();
        if self.vertex_indicators {
            for x in 0..n {
                base.push(VertexFunction::indicator(&Subset::from_indices(n, [x])));
            }
        }
        if self.subset_indicators && n <= SUBSET_FAMILY_LIMIT {
            for mask in 1..(1u64 << n) - 1 {
                base.push(VertexFunction::indicator(&Subset::from_mask(n, mask)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.random {
            base.push(random_function(n, &mut rng));
        }
        let mut functions = Vec::with_capacity(base.len());
        for f in base {
            if self.truncations {
                functions.extend(nonzero_truncations(&f));
            }
            functions.push(f);
        }
        let before = functions.len();
        functions.retain(|f| !is_constant(f));
        Family {
            excluded_constants: before - functions.len(),
            functions,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub functions: Vec<VertexFunction>,
    pub excluded_constants: usize,
}

fn is_constant(f: &VertexFunction) -> bool {
    f.values().windows(2).all(|w| w[0] == w[1])
}

/// `0` with probability 0.2, otherwise `±2^u` with `u` uniform on `[−3, 3]`.
pub fn random_function(n: usize, rng: &mut impl Rng) -> VertexFunction {
    let values = (0..n)
        .map(|_| {
            if rng.random_bool(0.2) {
                0.0
            } else {
                let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                sign * rng.random_range(-3.0..=3.0f64).exp2()
            }
        })
        .collect();
    VertexFunction::new(values).expect("finite by construction")
}
