use std::collections::HashSet;

use super::{GraphError, WeightedGraph};

/// Largest graph the exhaustive Hamiltonian search accepts.
pub const HAMILTONIAN_VERTEX_LIMIT: usize = 24;

/// Finds a Hamiltonian cycle by backtracking from vertex 0.
///
/// Returns the vertex order (the closing edge back to the first vertex is
/// implied), or `None` once the search space is exhausted. Graphs with fewer
/// than three vertices have no cycle. Dead-end states `(visited, last)` are
/// memoised so the search is bounded by `2^n · n` states.
pub fn hamiltonian_cycle(graph: &WeightedGraph) -> Result<Option<Vec<usize>>, GraphError> {
    let n = graph.vertex_count();
    if n > HAMILTONIAN_VERTEX_LIMIT {
        return Err(GraphError::BudgetExceeded {
            limit: HAMILTONIAN_VERTEX_LIMIT,
            count: n,
        });
    }
    if n < 3 {
        return Ok(None);
    }
    let mut search = Search {
        graph,
        full: (1u32 << n) - 1,
        dead: HashSet::new(),
        path: vec![0],
    };
    Ok(search.extend(1).then_some(search.path))
}

struct Search<'a> {
    graph: &'a WeightedGraph,
    full: u32,
    dead: HashSet<(u32, u8)>,
    path: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, visited: u32) -> bool {
        let last = *self.path.last().unwrap();
        if visited == self.full {
            return self.graph.adjacent(last, 0);
        }
        if self.dead.contains(&(visited, last as u8)) {
            return false;
        }
        let next: Vec<usize> = self
            .graph
            .neighbors(last)
            .map(|(y, _)| y)
            .filter(|&y| visited & (1 << y) == 0)
            .collect();
        for y in next {
            self.path.push(y);
            if self.extend(visited | (1 << y)) {
                return true;
            }
            self.path.pop();
        }
        self.dead.insert((visited, last as u8));
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_cycle(g: &WeightedGraph, c: &[usize]) -> bool {
        let mut seen = c.to_vec();
        seen.sort_unstable();
        seen == (0..g.vertex_count()).collect::<Vec<_>>()
            && (0..c.len()).all(|i| g.adjacent(c[i], c[(i + 1) % c.len()]))
    }

    #[test]
    fn triangle() {
        let g = WeightedGraph::unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(hamiltonian_cycle(&g).unwrap(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn star_has_none() {
        let g = WeightedGraph::unweighted(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(hamiltonian_cycle(&g).unwrap(), None);
        let edge = WeightedGraph::unweighted(2, [(0, 1)]).unwrap();
        assert_eq!(hamiltonian_cycle(&edge).unwrap(), None);
    }

    #[test]
    fn petersen_has_none() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = WeightedGraph::unweighted(10, outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(hamiltonian_cycle(&g).unwrap(), None);
    }

    #[test]
    fn cycle_graph_found() {
        // 5 and 12 are coprime, so i -> i + 5 walks a single 12-cycle.
        let g = WeightedGraph::unweighted(12, (0..12).map(|i| (i, (i + 5) % 12))).unwrap();
        let c = hamiltonian_cycle(&g).unwrap().unwrap();
        assert!(is_cycle(&g, &c));
    }

    #[test]
    fn budget() {
        let g = WeightedGraph::unweighted(25, []).unwrap();
        assert!(matches!(
            hamiltonian_cycle(&g),
            Err(GraphError::BudgetExceeded {
                limit: 24,
                count: 25
            })
        ));
    }
}
