//! Reference computations shared by the integration tests.

#![allow(dead_code)]

use std::collections::VecDeque;

use noncomm_core::WeightedGraph;
use rand::Rng;

pub fn bfs(graph: &WeightedGraph, xi: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; graph.vertex_count()];
    dist[xi] = Some(0);
    let mut queue = VecDeque::from([xi]);
    while let Some(x) = queue.pop_front() {
        for y in 0..graph.vertex_count() {
            if graph.adjacent(x, y) && dist[y].is_none() {
                dist[y] = Some(dist[x].unwrap() + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// `ν_r` straight from the definition: minimum of `μ_x / μ^ξ_x` over
/// `ρ_ξ(x) < r` with `μ^ξ_x > 0`.
pub fn nu_oracle(graph: &WeightedGraph, r: u32) -> f64 {
    let n = graph.vertex_count();
    let mut best = f64::INFINITY;
    for xi in 0..n {
        let d = bfs(graph, xi);
        for x in 0..n {
            let Some(dx) = d[x] else { continue };
            if dx >= r {
                continue;
            }
            let closer: f64 = (0..n)
                .filter(|&y| graph.adjacent(x, y) && d[y].is_some_and(|dy| dy < dx))
                .map(|y| graph.sigma(x, y).unwrap())
                .sum();
            if closer > 0.0 {
                best = best.min(graph.mu(x) / closer);
            }
        }
    }
    best
}

/// Connected weighted graph: a random spanning path plus each other pair
/// with probability `density`, weights uniform on `[0.25, 4]`.
pub fn random_weighted_graph(n: usize, density: f64, rng: &mut impl Rng) -> WeightedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let mut edges = std::collections::BTreeMap::new();
    for w in order.windows(2) {
        edges.insert(
            (w[0].min(w[1]), w[0].max(w[1])),
            rng.random_range(0.25..4.0),
        );
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges
                    .entry((u, v))
                    .or_insert_with(|| rng.random_range(0.25..4.0));
            }
        }
    }
    WeightedGraph::from_edges(n, edges.into_iter().map(|((u, v), w)| (u, v, w))).unwrap()
}
