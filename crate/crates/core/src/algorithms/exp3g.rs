use super::runner::{RoundContext, SamplingRule};
use crate::model::FeedbackMode;
use crate::rng::{RngStream, StreamId, StreamPurpose};
use crate::sim::Observation;

/// Exponential weights with importance-weighted graph feedback and uniform
/// exploration.
pub struct Exp3G {
    eta: f64,
    log_q: Vec<f64>,
    p: Vec<f64>,
    rng: RngStream,
}

impl Exp3G {
    pub const DEFAULT_ETA: f64 = 0.3;

    pub fn new(k: usize, eta: f64, seed: u64) -> Self {
        let mut s = Self {
            eta,
            log_q: vec![0.0; k],
            p: vec![0.0; k],
            rng: RngStream::new(seed, StreamId { run: 0, purpose: StreamPurpose::Algorithm }),
        };
        s.update_p();
        s
    }

    /// Sampling distribution of the next round.
    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    fn update_p(&mut self) {
        let k = self.log_q.len() as f64;
        let max = self.log_q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let total: f64 = self.log_q.iter().map(|l| (l - max).exp()).sum();
        for (p, l) in self.p.iter_mut().zip(&self.log_q) {
            *p = (1.0 - self.eta) * (l - max).exp() / total + self.eta / k;
        }
    }
}

impl SamplingRule for Exp3G {
    fn select(&mut self, _ctx: &RoundContext<'_>) -> usize {
        self.rng.next_categorical(&self.p)
    }

    /// In-neighborhoods come from the true graph in informed mode and from
    /// the support of the estimated graph otherwise.
    fn observe(&mut self, obs: &Observation, ctx: &RoundContext<'_>) {
        let k = self.p.len();
        let informed = ctx.problem.mode() == FeedbackMode::Informed;
        let graph = ctx.problem.instance().graph();
        for u in 0..k {
            let z = obs.z[u];
            if z == 0.0 {
                continue;
            }
            let reach: f64 = (0..k)
                .filter(|&v| if informed { graph.has_edge(v, u) } else { ctx.est.g_hat(v, u) > 0.0 })
                .map(|v| self.p[v])
                .sum();
            if reach > 0.0 {
                self.log_q[u] += self.eta * z / reach;
            }
        }
        self.update_p();
    }
}
