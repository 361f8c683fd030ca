use super::heuristic::inverse_gap_scores;
use crate::error::{Error, Result};
use crate::graph::{classify_observability, graph_quantities, FeedbackGraph};
use crate::model::{Instance, RewardFamily};

fn gaussian_variance(instance: &Instance) -> Result<f64> {
    match instance.family() {
        RewardFamily::Gaussian { variance } => Ok(variance),
        RewardFamily::Bernoulli => Err(Error::Precondition("bound requires Gaussian rewards".into())),
    }
}

/// Graph-structural upper bound on the characteristic time.
///
/// With dominating set `D` of the weakly observable vertices and self-loop set
/// `L`, the effective rate of `u` is the larger of the strongest edge from `D`
/// into `u` and the weakest positive edge from `L` into `u`. Graphs with
/// neither weakly observable vertices nor self-loops use a pairwise bound.
pub fn scaling_bound(instance: &Instance) -> Result<f64> {
    let variance = gaussian_variance(instance)?;
    let best = instance.check_identifiable()?;
    let g = instance.graph();
    let k = g.k();
    let q = graph_quantities(g)?;
    let gaps = instance.gaps()?;
    if q.delta + q.sigma > 0 {
        let loops = classify_observability(g).self_loops;
        let rate = |u: usize| -> f64 {
            let from_dom = q.witness_dominating_set.iter().map(|&v| g.weight(v, u)).fold(0.0, f64::max);
            let from_loops = loops
                .iter()
                .map(|&v| g.weight(v, u))
                .filter(|&w| w > 0.0)
                .fold(f64::INFINITY, f64::min);
            from_dom.max(if from_loops.is_finite() { from_loops } else { 0.0 })
        };
        let rate_best = rate(best);
        let denom = (0..k)
            .filter(|&u| u != best)
            .map(|u| rate(u).min(rate_best) * gaps[u] * gaps[u])
            .fold(f64::INFINITY, f64::min);
        if denom.is_nan() || denom <= 0.0 {
            return Err(Error::BoundUndefined(
                "some vertex receives no edge from the dominating or self-loop sets".into(),
            ));
        }
        let kappa = (q.delta + q.sigma - q.sigma / (q.alpha + 1)) as f64;
        Ok(4.0 * kappa * variance / denom)
    } else {
        let pair_rate = |v: usize, w: usize, u: usize| g.weight(v, u) + g.weight(w, u);
        let mut g_bar = f64::INFINITY;
        for v in 0..k {
            for w in (0..k).filter(|&w| w != v) {
                let worst = (0..k)
                    .filter(|&u| u != best)
                    .map(|u| 1.0 / pair_rate(v, w, u) + 1.0 / pair_rate(v, w, best))
                    .fold(f64::NEG_INFINITY, f64::max);
                g_bar = g_bar.min(worst);
            }
        }
        if !g_bar.is_finite() {
            return Err(Error::BoundUndefined("no vertex pair observes every vertex".into()));
        }
        Ok(4.0 * g_bar * variance / (gaps[best] * gaps[best]))
    }
}

/// Upper bound on the characteristic time of the heuristic allocation,
/// `4 lambda^2 |G Delta^-2|_1 / sigma_min(G)^2`; `+inf` for singular `G`.
pub fn heuristic_bound(instance: &Instance) -> Result<f64> {
    let variance = gaussian_variance(instance)?;
    instance.check_identifiable()?;
    let scores = inverse_gap_scores(instance)?;
    let s_min = min_singular_value(instance.graph());
    if s_min <= 1e-12 {
        return Ok(f64::INFINITY);
    }
    Ok(4.0 * variance * scores.iter().sum::<f64>() / (s_min * s_min))
}

/// Singular values by one-sided Jacobi rotations, in decreasing order.
pub(crate) fn singular_values(g: &FeedbackGraph) -> Vec<f64> {
    let k = g.k();
    // Column-major copy: cols[j] is column j.
    let mut cols: Vec<Vec<f64>> = (0..k).map(|j| (0..k).map(|i| g.weight(i, j)).collect()).collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    for _sweep in 0..100 {
        let mut rotated = false;
        for i in 0..k {
            for j in i + 1..k {
                let alpha = dot(&cols[i], &cols[i]);
                let beta = dot(&cols[j], &cols[j]);
                let gamma = dot(&cols[i], &cols[j]);
                if gamma.abs() <= 1e-15 * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(j);
                for (x, y) in left[i].iter_mut().zip(right[0].iter_mut()) {
                    let (xi, yj) = (*x, *y);
                    *x = c * xi - s * yj;
                    *y = s * xi + c * yj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut values: Vec<f64> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

pub(crate) fn min_singular_value(g: &FeedbackGraph) -> f64 {
    singular_values(g).last().copied().unwrap_or(0.0)
}
