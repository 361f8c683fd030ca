use crate::graph::FeedbackGraph;
use crate::model::{FeedbackMode, RewardFamily};
use crate::sim::Observation;

/// Counts and reward sums accumulated from observations.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorState {
    k: usize,
    t: u64,
    n_pulls: Vec<u64>,
    /// Row-major `N_{v,u}`.
    n_edge: Vec<u64>,
    m_obs: Vec<u64>,
    reward_sums: Vec<f64>,
}

impl EstimatorState {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            t: 0,
            n_pulls: vec![0; k],
            n_edge: vec![0; k * k],
            m_obs: vec![0; k],
            reward_sums: vec![0.0; k],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of rounds folded in so far.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn n_pulls(&self) -> &[u64] {
        &self.n_pulls
    }

    pub fn n_edge(&self, v: usize, u: usize) -> u64 {
        self.n_edge[v * self.k + u]
    }

    /// Number of observed reward samples per vertex.
    pub fn m_obs(&self) -> &[u64] {
        &self.m_obs
    }

    pub fn reward_sums(&self) -> &[f64] {
        &self.reward_sums
    }

    /// In uninformed mode an edge counts as fired iff its observation is nonzero.
    pub fn update(&mut self, obs: &Observation, mode: FeedbackMode) {
        let v = obs.chosen;
        self.t += 1;
        self.n_pulls[v] += 1;
        let mut record = |u: usize| {
            self.n_edge[v * self.k + u] += 1;
            self.m_obs[u] += 1;
            self.reward_sums[u] += obs.z[u];
        };
        match (mode, &obs.activated) {
            (FeedbackMode::Informed, Some(fired)) => fired.iter().for_each(|&u| record(u)),
            _ => (0..self.k).filter(|&u| obs.z[u] != 0.0).for_each(record),
        }
    }

    pub fn mu_hat(&self, u: usize) -> Option<f64> {
        (self.m_obs[u] > 0).then(|| self.reward_sums[u] / self.m_obs[u] as f64)
    }

    pub fn mu_hats(&self) -> Vec<Option<f64>> {
        (0..self.k).map(|u| self.mu_hat(u)).collect()
    }

    /// Empirical activation frequency, `1` for a row never pulled.
    pub fn g_hat(&self, v: usize, u: usize) -> f64 {
        match self.n_pulls[v] {
            0 => 1.0,
            n => self.n_edge(v, u) as f64 / n as f64,
        }
    }

    pub fn g_hat_graph(&self) -> FeedbackGraph {
        let w = (0..self.k * self.k).map(|i| self.g_hat(i / self.k, i % self.k)).collect();
        FeedbackGraph::new(self.k, w).expect("frequencies lie in [0, 1]")
    }

    pub fn all_observed(&self) -> bool {
        self.m_obs.iter().all(|&m| m > 0)
    }

    /// Observed vertex with the largest empirical mean; ties to the smallest index.
    pub fn empirical_best(&self) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for u in 0..self.k {
            if let Some(m) = self.mu_hat(u) {
                if best.is_none_or(|(_, b)| m > b) {
                    best = Some((u, m));
                }
            }
        }
        best.map(|(u, _)| u)
    }

    /// Empirical means with unobserved entries replaced by `fill`, clamped to
    /// the interior of `[0, 1]` for Bernoulli rewards.
    pub(crate) fn plug_in_means(&self, family: RewardFamily, fill: f64) -> Vec<f64> {
        const EPS: f64 = 1e-6;
        (0..self.k)
            .map(|u| {
                let m = self.mu_hat(u).unwrap_or(fill);
                if family.is_bernoulli() {
                    m.clamp(EPS, 1.0 - EPS)
                } else {
                    m
                }
            })
            .collect()
    }
}
