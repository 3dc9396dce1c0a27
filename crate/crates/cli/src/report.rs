use std::collections::BTreeMap;

use serde::Serialize;

/// Bumped whenever a report field changes.
pub fn report_schema_version() -> &'static str {
    "1"
}

/// Conventions behind the numbers in every report.
pub fn conventions() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("ball", "strict: B_xi(r) = {x : rho_xi(x) < r}"),
        ("dirichlet_energy", "ordered pairs: sum over x, y adjacent of |f(y) - f(x)|^p sigma_xy, twice the per-edge sum"),
        ("gradient", "f(y) - f(x); boundary terms oriented from inside to outside"),
        ("laplacian", "mu-normalized: (1/mu_x) sum_y (f(y) - f(x)) sigma_xy"),
        ("sobolev_flat_left_norm", "unweighted: (sum_x |f(x)|^(np/(n-p)))^((n-p)/(np))"),
        ("tolerance", "lhs <= rhs + 1e-12 (1 + |rhs|)"),
    ])
}

/// Pretty JSON with a trailing newline. Map keys come out sorted, so equal
/// inputs give byte-identical output.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Wraps a command's payload with the schema version and conventions.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub conventions: BTreeMap<&'static str, &'static str>,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &'static str, result: T) -> Self {
        Envelope {
            schema_version: report_schema_version(),
            command,
            conventions: conventions(),
            result,
        }
    }
}
