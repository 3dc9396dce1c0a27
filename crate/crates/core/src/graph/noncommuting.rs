use super::{GraphError, WeightedGraph};
use crate::group::FiniteGroup;

/// Noncommuting graph `Γ_G`: vertices are the noncentral elements of `g`
/// (in increasing element order), joined when they do not commute. All edge
/// weights are 1.
pub fn noncommuting_graph(g: &FiniteGroup) -> Result<WeightedGraph, GraphError> {
    let center = g.center();
    let vertices: Vec<usize> = g
        .elements()
        .filter(|a| center.binary_search(a).is_err())
        .collect();
    if vertices.is_empty() {
        return Err(GraphError::AbelianGroup);
    }
    let mut edges = Vec::new();
    for (i, &a) in vertices.iter().enumerate() {
        for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
            if g.mul(a, b) != g.mul(b, a) {
                edges.push((i, j));
            }
        }
    }
    let labels = vertices.iter().map(|&a| g.label(a).to_string()).collect();
    WeightedGraph::unweighted(vertices.len(), edges)?.with_labels(labels)
}
