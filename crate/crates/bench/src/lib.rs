//! Fixtures shared by the criterion benches.

use noncomm_core::{build_group, noncommuting_graph, VertexFunction, WeightedGraph};

/// Noncommuting graph of a group spec; panics on specs that do not build.
pub fn graph_of(spec: &str) -> WeightedGraph {
    let group = build_group(spec).expect("bench spec builds");
    noncommuting_graph(&group).expect("bench group is nonabelian")
}

/// A fixed sign-changing function spread over several dyadic levels.
pub fn spread_function(n: usize) -> VertexFunction {
    let values = (0..n)
        .map(|i| match i % 5 {
            0 => 0.0,
            r => (if i % 2 == 0 { 1.0 } else { -1.0 }) * f64::powi(2.0, r as i32 - 2),
        })
        .collect();
    VertexFunction::new(values).expect("finite values")
}
