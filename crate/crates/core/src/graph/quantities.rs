//! Exact graph-dependent quantities by subset enumeration.
//!
//! Ties between optimal sets are broken toward the lexicographically smallest
//! sorted vertex list.

use itertools::Itertools;
use serde::Serialize;

use super::{classify_observability, FeedbackGraph};
use crate::error::{Error, Result};

/// Largest `K` accepted by the exact routines.
pub const MAX_EXACT_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphQuantities {
    /// Independence number.
    pub alpha: usize,
    /// Weak domination number (`0` when there are no weakly observable vertices).
    pub delta: usize,
    /// Number of self-loops.
    pub sigma: usize,
    pub witness_independent_set: Vec<usize>,
    pub witness_dominating_set: Vec<usize>,
}

fn check_size(g: &FeedbackGraph) -> Result<()> {
    if g.k() > MAX_EXACT_VERTICES {
        return Err(Error::TooLarge { k: g.k(), max: MAX_EXACT_VERTICES });
    }
    Ok(())
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask & (1u64 << v) != 0).collect()
}

fn vec_to_mask(set: &[usize]) -> u64 {
    set.iter().fold(0, |acc, &v| acc | (1u64 << v))
}

/// Lexicographically smallest maximum independent set. An independent set has
/// no edge in either direction between two distinct members; self-loops are
/// allowed.
pub(crate) fn max_independent_set(g: &FeedbackGraph) -> Result<Vec<usize>> {
    check_size(g)?;
    let k = g.k();
    let adjacency: Vec<u64> = (0..k)
        .map(|u| {
            (0..k)
                .filter(|&v| v != u && (g.has_edge(u, v) || g.has_edge(v, u)))
                .fold(0u64, |acc, v| acc | (1u64 << v))
        })
        .collect();

    fn search(candidates: u64, chosen: u64, adjacency: &[u64], best: &mut u64) {
        let size = chosen.count_ones();
        if candidates == 0 {
            if size > best.count_ones() {
                *best = chosen;
            }
            return;
        }
        if size + candidates.count_ones() <= best.count_ones() {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;
        // Include-first visits same-size sets in lexicographic order.
        search(candidates & !bit & !adjacency[v], chosen | bit, adjacency, best);
        search(candidates & !bit, chosen, adjacency, best);
    }

    let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut best = 0u64;
    search(all, 0, &adjacency, &mut best);
    Ok(mask_to_vec(best))
}

/// Minimum-cardinality `D` such that every vertex of `target` is an
/// out-neighbor of some vertex of `D`.
pub fn min_dominating_set_of(g: &FeedbackGraph, target: &[usize]) -> Result<Vec<usize>> {
    check_size(g)?;
    if target.is_empty() {
        return Ok(Vec::new());
    }
    for &w in target {
        if w >= g.k() {
            return Err(Error::Precondition(format!("target vertex {w} is out of range")));
        }
        if g.in_neighbors(w).is_empty() {
            return Err(Error::Undominatable(w));
        }
    }
    let target_mask = vec_to_mask(target);
    let candidates: Vec<(usize, u64)> = (0..g.k())
        .map(|u| (u, g.out_mask(u) & target_mask))
        .filter(|&(_, m)| m != 0)
        .collect();
    for size in 1..=candidates.len() {
        // `combinations` yields index tuples in lexicographic order.
        for combo in candidates.iter().combinations(size) {
            let covered = combo.iter().fold(0u64, |acc, (_, m)| acc | m);
            if covered == target_mask {
                return Ok(combo.into_iter().map(|&(u, _)| u).collect());
            }
        }
    }
    unreachable!("every target vertex has an in-neighbor, so the candidate set dominates")
}

/// Alpha, delta and sigma with witnesses.
pub fn graph_quantities(g: &FeedbackGraph) -> Result<GraphQuantities> {
    check_size(g)?;
    let report = classify_observability(g);
    let witness_independent_set = max_independent_set(g)?;
    let witness_dominating_set = min_dominating_set_of(g, &report.weakly_observable)?;
    Ok(GraphQuantities {
        alpha: witness_independent_set.len(),
        delta: witness_dominating_set.len(),
        sigma: report.self_loops.len(),
        witness_independent_set,
        witness_dominating_set,
    })
}

/// Upper bound on the number of vertices needed to dominate the strongly
/// observable set: `min(|SO|, 2)` when no strongly observable vertex has a
/// self-loop, `sigma - floor(sigma / (alpha + 1))` otherwise.
pub fn so_domination_bound(g: &FeedbackGraph) -> Result<usize> {
    let report = classify_observability(g);
    if report.strongly_observable.is_empty() {
        return Err(Error::Precondition("the graph has no strongly observable vertex".into()));
    }
    let sigma = report.self_loops.len();
    if sigma == 0 {
        return Ok(report.strongly_observable.len().min(2));
    }
    let alpha = max_independent_set(g)?.len();
    Ok(sigma - sigma / (alpha + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphFamily, GraphParams};

    fn from_edges(k: usize, edges: &[(usize, usize)]) -> FeedbackGraph {
        let mut w = vec![0.0; k * k];
        for &(u, v) in edges {
            w[u * k + v] = 1.0;
        }
        FeedbackGraph::new(k, w).unwrap()
    }

    // Vertices A, B, C, D -> 0, 1, 2, 3.
    fn loops4() -> Vec<(usize, usize)> {
        vec![(0, 0), (1, 1), (2, 2), (3, 3)]
    }

    #[test]
    fn example_graph_quantities() {
        let p = GraphParams { p: Some(0.3), q: None, r: None };
        let bandit = graph_quantities(&FeedbackGraph::identity(5)).unwrap();
        assert_eq!((bandit.alpha, bandit.sigma, bandit.delta), (5, 5, 0));
        assert!(bandit.witness_dominating_set.is_empty());

        let ring = graph_quantities(&generate_graph(GraphFamily::Ring, 5, &p).unwrap()).unwrap();
        assert_eq!((ring.alpha, ring.delta), (2, 3));

        let reveal =
            graph_quantities(&generate_graph(GraphFamily::RevealingAction, 5, &p).unwrap()).unwrap();
        assert_eq!((reveal.alpha, reveal.delta), (4, 1));
        assert_eq!(reveal.witness_dominating_set, vec![0]);
        assert_eq!(reveal.witness_independent_set, vec![1, 2, 3, 4]);
    }

    #[test]
    fn lexicographic_witnesses() {
        // Path 0 - 1 - 2 - 3 (symmetric): maximum independent sets {0,2}, {0,3}, {1,3}.
        let g = from_edges(4, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)]);
        assert_eq!(max_independent_set(&g).unwrap(), vec![0, 2]);
        // Without self-loops, 0 is only seen by 1 and 3 only by 2.
        assert_eq!(min_dominating_set_of(&g, &[0, 1, 2, 3]).unwrap(), vec![1, 2]);
        assert_eq!(min_dominating_set_of(&g, &[1, 3]).unwrap(), vec![2]);
    }

    #[test]
    fn empty_target_and_undominatable_target() {
        let g = from_edges(3, &[(0, 1)]);
        assert!(min_dominating_set_of(&g, &[]).unwrap().is_empty());
        assert!(matches!(min_dominating_set_of(&g, &[2]), Err(Error::Undominatable(2))));
    }

    #[test]
    fn size_limit() {
        let g = FeedbackGraph::identity(MAX_EXACT_VERTICES + 1);
        assert!(matches!(graph_quantities(&g), Err(Error::TooLarge { .. })));
        assert!(graph_quantities(&FeedbackGraph::identity(MAX_EXACT_VERTICES)).is_ok());
    }

    #[test]
    fn domination_bound_on_four_vertex_examples() {
        let mut left = loops4();
        left.extend([(0, 1), (2, 1), (3, 0), (1, 3), (3, 2), (0, 2)]);
        let left = from_edges(4, &left);
        assert_eq!(max_independent_set(&left).unwrap().len(), 1);
        assert_eq!(so_domination_bound(&left).unwrap(), 2);
        assert_eq!(min_dominating_set_of(&left, &[0, 1, 2, 3]).unwrap(), vec![0, 1]);

        let mut right = loops4();
        right.extend([(0, 1), (1, 2), (0, 3), (1, 3), (2, 3)]);
        let right = from_edges(4, &right);
        assert_eq!(max_independent_set(&right).unwrap(), vec![0, 2]);
        assert_eq!(so_domination_bound(&right).unwrap(), 3);
        assert_eq!(min_dominating_set_of(&right, &[0, 1, 2, 3]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn domination_bound_loopless_clique() {
        let g = generate_graph(
            GraphFamily::LooplessClique,
            4,
            &GraphParams { p: Some(0.5), q: None, r: None },
        )
        .unwrap();
        assert_eq!(so_domination_bound(&g).unwrap(), 2);
    }

    #[test]
    fn domination_bound_requires_strong_vertices() {
        let g = generate_graph(GraphFamily::Ring, 5, &GraphParams { p: Some(0.3), q: None, r: None })
            .unwrap();
        assert!(matches!(so_domination_bound(&g), Err(Error::Precondition(_))));
    }
}
