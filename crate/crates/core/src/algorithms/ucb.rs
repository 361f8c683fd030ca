use super::runner::{RoundContext, SamplingRule};
use super::EstimatorState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UcbVariant {
    /// Maximize the optimistic expected observed reward `(G mu)_u`.
    Expected,
    /// Pull the vertex most likely to observe the optimistic best vertex.
    Visit,
}

/// Optimistic sampling with confidence bonuses on means and edge weights.
pub struct UcbFg {
    variant: UcbVariant,
}

impl UcbFg {
    pub fn new(variant: UcbVariant) -> Self {
        Self { variant }
    }
}

/// Optimistic edge weight, `1` for rows never pulled.
pub fn g_ucb(est: &EstimatorState, v: usize, u: usize) -> f64 {
    let n = est.n_pulls()[v];
    if n == 0 {
        return 1.0;
    }
    let bonus = ((1.0 + est.t() as f64).ln() / (2.0 * n as f64)).sqrt();
    (est.g_hat(v, u) + bonus).min(1.0)
}

/// Optimistic mean, `+inf` before the first observation.
pub fn mu_ucb(est: &EstimatorState, u: usize) -> f64 {
    match est.mu_hat(u) {
        None => f64::INFINITY,
        Some(m) => m + (2.0 * (1.0 + est.t() as f64).ln() / est.m_obs()[u] as f64).sqrt(),
    }
}

fn argmax(k: usize, f: impl Fn(usize) -> f64) -> usize {
    let mut best = (f64::NEG_INFINITY, 0);
    for u in 0..k {
        let x = f(u);
        if x > best.0 {
            best = (x, u);
        }
    }
    best.1
}

impl SamplingRule for UcbFg {
    fn select(&mut self, ctx: &RoundContext<'_>) -> usize {
        let est = ctx.est;
        let k = est.k();
        // Reach every vertex once before trusting the indices.
        if let Some(v) = (0..k).find(|&v| est.m_obs()[v] == 0) {
            if est.n_pulls()[v] == 0 {
                return v;
            }
            return argmax(k, |u| g_ucb(est, u, v));
        }
        let mu: Vec<f64> = (0..k).map(|u| mu_ucb(est, u)).collect();
        match self.variant {
            UcbVariant::Expected => argmax(k, |u| (0..k).map(|v| g_ucb(est, u, v) * mu[v]).sum()),
            UcbVariant::Visit => {
                let target = argmax(k, |u| mu[u]);
                argmax(k, |v| g_ucb(est, v, target))
            }
        }
    }
}
