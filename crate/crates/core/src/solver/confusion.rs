use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::FeedbackGraph;
use crate::model::{bern_kl_extended, Instance, RewardFamily};

/// An alternative model whose best vertex differs but whose observations
/// have the same law as the original's when activations are hidden.
#[derive(Debug, Clone, Serialize)]
pub struct ConfusionCertificate {
    pub target: usize,
    pub confusing: Instance,
    /// For each selected vertex, the summed divergence between the laws of
    /// the observations `Z_{v, .}` under the two models.
    pub per_vertex: Vec<f64>,
    /// Largest entry of `per_vertex`, which bounds the divergence for every allocation.
    pub divergence: f64,
}

/// Raises the mean of `target` above the best mean (halfway to `1`, or to `1`
/// when the best mean already is `1`, which leaves a tie) and scales its
/// incoming edge weights down so that every product `G_{v,u} mu_u` is preserved.
pub fn bernoulli_confusion(instance: &Instance, target: usize) -> Result<ConfusionCertificate> {
    if instance.family() != RewardFamily::Bernoulli {
        return Err(Error::Precondition("confusing model requires Bernoulli rewards".into()));
    }
    let best = instance.best_vertex()?;
    let k = instance.k();
    if target >= k || target == best {
        return Err(Error::Precondition(format!("target {target} must be a suboptimal vertex")));
    }
    let mu = instance.means();
    let top = mu[best];
    let raised = top + (1.0 - top) / 2.0;
    let g = instance.graph();
    let mut weights = g.weights().to_vec();
    for v in 0..k {
        weights[v * k + target] = g.weight(v, target) * mu[target] / raised;
    }
    let mut means = mu.to_vec();
    means[target] = raised;
    let confusing = Instance::new(FeedbackGraph::new(k, weights)?, RewardFamily::Bernoulli, means)?;

    let h = confusing.graph();
    let per_vertex: Vec<f64> = (0..k)
        .map(|v| {
            (0..k)
                .map(|u| bern_kl_extended(g.weight(v, u) * mu[u], h.weight(v, u) * confusing.means()[u]))
                .sum()
        })
        .collect();
    let divergence = per_vertex.iter().copied().fold(0.0, f64::max);
    Ok(ConfusionCertificate { target, confusing, per_vertex, divergence })
}
