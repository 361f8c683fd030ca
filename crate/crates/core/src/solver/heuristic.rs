use super::Allocation;
use crate::error::{Error, Result};
use crate::model::Instance;

/// `G Delta^-2`, with the best vertex's gap set to the minimum gap.
pub(crate) fn inverse_gap_scores(instance: &Instance) -> Result<Vec<f64>> {
    let gaps = instance.gaps()?;
    if gaps.iter().any(|&d| d.is_nan() || d <= 0.0) {
        return Err(Error::Domain("the minimum gap is zero".into()));
    }
    let inv: Vec<f64> = gaps.iter().map(|d| 1.0 / (d * d)).collect();
    Ok(instance.graph().apply(&inv))
}

/// `G Delta^-2` normalized to the simplex.
pub fn heuristic_allocation(instance: &Instance) -> Result<Allocation> {
    Allocation::normalized(inverse_gap_scores(instance)?)
}

/// Uniform allocation on the shortest prefix (of length at least `top_k`) of
/// the vertices ranked by `G Delta^-2` that dominates every vertex. `None`
/// when no prefix dominates.
pub fn sparse_allocation(instance: &Instance, top_k: usize) -> Result<Option<Allocation>> {
    if top_k == 0 {
        return Err(Error::Precondition("top_k must be at least 1".into()));
    }
    let scores = inverse_gap_scores(instance)?;
    let k = instance.k();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let everything: Vec<usize> = (0..k).collect();
    for len in top_k..=k {
        let prefix = &order[..len];
        if instance.graph().dominates(prefix, &everything) {
            let mut omega = vec![0.0; k];
            for &v in prefix {
                omega[v] = 1.0 / len as f64;
            }
            return Ok(Some(Allocation::new(omega)?));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, min_dominating_set_of, FeedbackGraph, GraphFamily, GraphParams};
    use crate::model::RewardFamily;

    const UNIT: RewardFamily = RewardFamily::Gaussian { variance: 1.0 };

    #[test]
    fn symmetric_bandit_is_uniform() {
        let inst = Instance::new(FeedbackGraph::identity(2), UNIT, vec![1.0, 0.0]).unwrap();
        assert_eq!(heuristic_allocation(&inst).unwrap().as_slice(), &[0.5, 0.5]);
    }

    #[test]
    fn full_feedback_is_uniform() {
        let g = generate_graph(GraphFamily::FullFeedback, 4, &GraphParams::default()).unwrap();
        let inst = Instance::new(g, UNIT, vec![0.0, 0.2, 0.9, 0.5]).unwrap();
        for &w in heuristic_allocation(&inst).unwrap().as_slice() {
            assert!((w - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn sparse_allocations() {
        let reveal = generate_graph(GraphFamily::RevealingAction, 5, &GraphParams::default()).unwrap();
        let inst = Instance::new(reveal, UNIT, vec![0.0, 0.25, 0.5, 0.75, 1.0]).unwrap();
        assert_eq!(sparse_allocation(&inst, 1).unwrap().unwrap(), Allocation::vertex(5, 0));

        let inst = Instance::new(FeedbackGraph::identity(5), UNIT, vec![0.0, 0.25, 0.5, 0.75, 1.0]).unwrap();
        assert_eq!(sparse_allocation(&inst, 1).unwrap().unwrap(), Allocation::uniform(5));

        let ring = generate_graph(GraphFamily::Ring, 5, &GraphParams::with_p(0.3)).unwrap();
        let inst = Instance::new(ring.clone(), UNIT, vec![0.0, 0.25, 0.5, 0.75, 1.0]).unwrap();
        let omega = sparse_allocation(&inst, 1).unwrap().unwrap();
        let support: Vec<usize> = (0..5).filter(|&v| omega.as_slice()[v] > 0.0).collect();
        let all: Vec<usize> = (0..5).collect();
        assert!(ring.dominates(&support, &all));
        assert!(support.len() >= min_dominating_set_of(&ring, &all).unwrap().len());

        let blind = FeedbackGraph::from_rows(&[vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let inst = Instance::new(blind, UNIT, vec![0.0, 1.0]).unwrap();
        assert_eq!(sparse_allocation(&inst, 1).unwrap(), None);
        assert!(sparse_allocation(&inst, 0).is_err());
    }
}
