use super::runner::{RoundContext, SamplingRule};
use super::tracking::{select_vertex_dtracking, Smoothing, TrackingState};
use crate::solver::{refine_allocation, Objective};

/// How the target allocation is recomputed from the current estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AllocationSource {
    /// Warm-started optimization of the plug-in characteristic time.
    Exact,
    /// Normalized `G Delta^-2` of the plug-in model.
    Heuristic,
}

/// Track-and-stop sampling: D-tracking of plug-in optimal allocations.
pub struct TrackAndStop {
    source: AllocationSource,
    tracking: TrackingState,
    current: Vec<f64>,
    next_refresh: u64,
}

/// Refinement steps per recomputation.
const WARM_ITERATIONS: usize = 200;
/// Above this size the allocation is refreshed every `ceil(sqrt(t))` rounds.
const EVERY_ROUND_MAX_K: usize = 6;

impl TrackAndStop {
    pub fn new(k: usize, source: AllocationSource, smoothing: Smoothing) -> Self {
        Self {
            source,
            tracking: TrackingState::new(k, smoothing),
            current: vec![1.0 / k as f64; k],
            next_refresh: 0,
        }
    }

    fn refresh(&mut self, ctx: &RoundContext<'_>) {
        let est = ctx.est;
        let k = est.k();
        let t = est.t();
        if !est.all_observed() {
            return;
        }
        if k > EVERY_ROUND_MAX_K {
            if t < self.next_refresh {
                return;
            }
            self.next_refresh = t + ((t as f64).sqrt().ceil() as u64).max(1);
        }
        let family = ctx.problem.instance().family();
        let Some(best) = est.empirical_best() else { return };
        let means = est.plug_in_means(family, 0.0);
        if means.iter().enumerate().any(|(u, &m)| u != best && m >= means[best]) {
            return;
        }
        let graph = est.g_hat_graph();
        match self.source {
            AllocationSource::Exact => {
                let objective = Objective::new(&graph, family, &means, best);
                self.current = refine_allocation(&objective, &self.current, WARM_ITERATIONS);
            }
            AllocationSource::Heuristic => {
                let top = means[best];
                let min_gap = means
                    .iter()
                    .enumerate()
                    .filter(|&(u, _)| u != best)
                    .map(|(_, &m)| top - m)
                    .fold(f64::INFINITY, f64::min);
                let inv: Vec<f64> = means
                    .iter()
                    .enumerate()
                    .map(|(u, &m)| {
                        let gap = if u == best { min_gap } else { top - m };
                        1.0 / (gap * gap)
                    })
                    .collect();
                let scores = graph.apply(&inv);
                let total: f64 = scores.iter().sum();
                if total > 0.0 && total.is_finite() {
                    self.current = scores.into_iter().map(|s| s / total).collect();
                }
            }
        }
    }
}

impl SamplingRule for TrackAndStop {
    fn select(&mut self, ctx: &RoundContext<'_>) -> usize {
        self.refresh(ctx);
        select_vertex_dtracking(ctx.est.n_pulls(), &mut self.tracking, &self.current)
    }
}
