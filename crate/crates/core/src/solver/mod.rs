//! Characteristic time and optimal allocations.
//!
//! The information rate of an allocation `omega` is
//! `min_{u != best} f_u(m)` with `m = G^T omega` and
//! `f_u(m) = inf_x m_best KL(mu_best, x) + m_u KL(mu_u, x)`. The infimum is
//! attained at the `m`-weighted mean, so each `f_u` is concave in `m` and its
//! gradient is `(KL(mu_best, x*), KL(mu_u, x*))`.

mod bounds;
mod confusion;
mod heuristic;

pub use bounds::{heuristic_bound, scaling_bound};
pub use confusion::{bernoulli_confusion, ConfusionCertificate};
pub use heuristic::{heuristic_allocation, sparse_allocation};


use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::FeedbackGraph;
use crate::model::{FeedbackMode, Instance, RewardFamily};

/// Probability vector over vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation(Vec<f64>);

impl Allocation {
    pub const TOLERANCE: f64 = 1e-9;

    pub fn new(omega: Vec<f64>) -> Result<Self> {
        if omega.is_empty() {
            return Err(Error::Domain("empty allocation".into()));
        }
        if omega.iter().any(|&w| w < 0.0 || !w.is_finite()) {
            return Err(Error::Domain("allocation entries must be finite and nonnegative".into()));
        }
        let total: f64 = omega.iter().sum();
        if (total - 1.0).abs() > Self::TOLERANCE {
            return Err(Error::Domain(format!("allocation sums to {total}, expected 1")));
        }
        Ok(Self(omega))
    }

    /// Rescales a nonnegative vector with positive sum.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::Domain("weights must have finite positive sum".into()));
        }
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    pub fn uniform(k: usize) -> Self {
        Self(vec![1.0 / k as f64; k])
    }

    pub fn vertex(k: usize, v: usize) -> Self {
        let mut omega = vec![0.0; k];
        omega[v] = 1.0;
        Self(omega)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn observation_rate(&self, g: &FeedbackGraph) -> ObservationRate {
        ObservationRate { m: g.observation_rate(&self.0) }
    }
}

/// Per-vertex observation frequencies `m = G^T omega`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservationRate {
    pub m: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Iterations per restart.
    pub max_iterations: usize,
    /// Numerator of the `c / sqrt(n)` step size.
    pub step_scale: f64,
    /// Number of final iterates whose spread defines `gap_estimate`.
    pub tail_window: usize,
    /// Bernoulli rewards are only identifiable when activations are revealed.
    pub mode: FeedbackMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { max_iterations: 50_000, step_scale: 0.5, tail_window: 1_000, mode: FeedbackMode::Uninformed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverResult {
    pub t_star: f64,
    pub omega_star: Allocation,
    /// Inner objective at `omega_star` for each alternative, in increasing
    /// vertex order with the best vertex skipped.
    pub per_alt_values: Vec<f64>,
    pub best_vertex: usize,
    pub iterations: usize,
    /// Relative spread of the objective over the final iterates.
    pub gap_estimate: f64,
}

/// Objective evaluator for a graph, family and mean vector.
#[derive(Clone, Copy)]
pub(crate) struct Objective<'a> {
    pub graph: &'a FeedbackGraph,
    pub family: RewardFamily,
    pub means: &'a [f64],
    pub best: usize,
}

impl<'a> Objective<'a> {
    pub fn new(graph: &'a FeedbackGraph, family: RewardFamily, means: &'a [f64], best: usize) -> Self {
        Self { graph, family, means, best }
    }

    pub fn of(instance: &'a Instance, best: usize) -> Self {
        Self::new(instance.graph(), instance.family(), instance.means(), best)
    }

    /// `f_u(m)` and its partial derivatives in `m_best` and `m_u`.
    #[inline]
    fn term(&self, m: &[f64], u: usize) -> (f64, f64, f64) {
        let a = self.best;
        let (ma, mu) = (m[a], m[u]);
        if ma <= 0.0 || mu <= 0.0 {
            return (0.0, 0.0, 0.0);
        }
        let x = (ma * self.means[a] + mu * self.means[u]) / (ma + mu);
        let da = self.family.divergence(self.means[a], x);
        let du = self.family.divergence(self.means[u], x);
        (ma * da + mu * du, da, du)
    }

    /// Minimum over alternatives with the first minimizing alternative.
    pub fn value_at_rate(&self, m: &[f64]) -> (f64, usize) {
        let mut best = (f64::INFINITY, usize::MAX);
        for u in (0..m.len()).filter(|&u| u != self.best) {
            let (v, _, _) = self.term(m, u);
            if v < best.0 {
                best = (v, u);
            }
        }
        best
    }

    pub fn value(&self, omega: &[f64]) -> f64 {
        self.value_at_rate(&self.graph.observation_rate(omega)).0
    }

    pub fn per_alt(&self, omega: &[f64]) -> Vec<f64> {
        let m = self.graph.observation_rate(omega);
        (0..m.len()).filter(|&u| u != self.best).map(|u| self.term(&m, u).0).collect()
    }

    /// Supergradient in `omega` of the active term.
    fn supergradient(&self, m: &[f64], u: usize, grad: &mut [f64]) {
        let (_, da, du) = self.term(m, u);
        let a = self.best;
        for (v, g) in grad.iter_mut().enumerate() {
            *g = da * self.graph.weight(v, a) + du * self.graph.weight(v, u);
        }
    }

    /// Entropic mirror ascent from `start` with step `scale / sqrt(offset + n)`.
    /// Returns the best iterate, its value, and the values of every iterate.
    pub fn ascend(&self, start: &[f64], iterations: usize, scale: f64, offset: usize, trace: Option<&mut Vec<f64>>) -> (Vec<f64>, f64) {
        let k = start.len();
        let floor = 1e-9 / k as f64;
        let mut log_w: Vec<f64> = start.iter().map(|&w| (w + floor).ln()).collect();
        let mut omega = vec![0.0; k];
        let mut m = vec![0.0; k];
        let mut grad = vec![0.0; k];
        let mut best_omega = start.to_vec();
        let mut best_value = f64::NEG_INFINITY;
        let mut trace = trace;
        for n in 0..=iterations {
            softmax(&log_w, &mut omega);
            self.graph.observation_rate_into(&omega, &mut m);
            let (value, active) = self.value_at_rate(&m);
            if let Some(t) = trace.as_deref_mut() {
                t.push(value);
            }
            if value > best_value {
                best_value = value;
                best_omega.copy_from_slice(&omega);
            }
            if n == iterations || active == usize::MAX {
                break;
            }
            self.supergradient(&m, active, &mut grad);
            let scale_g = grad.iter().fold(0.0f64, |acc, g| acc.max(g.abs()));
            if !(scale_g > 0.0 && scale_g.is_finite()) {
                break;
            }
            let eta = scale / ((offset + n + 1) as f64).sqrt();
            for (lw, g) in log_w.iter_mut().zip(&grad) {
                *lw += eta * g / scale_g;
            }
        }
        (best_omega, best_value)
    }
}

fn softmax(log_w: &[f64], out: &mut [f64]) {
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    for (o, &l) in out.iter_mut().zip(log_w) {
        *o = (l - max).exp();
        total += *o;
    }
    out.iter_mut().for_each(|o| *o /= total);
}

/// Information rate `1 / T(omega)` of an allocation.
pub fn inverse_time(instance: &Instance, omega: &Allocation) -> Result<f64> {
    let best = instance.check_identifiable()?;
    if omega.len() != instance.k() {
        return Err(Error::Domain("allocation length does not match the graph".into()));
    }
    Ok(Objective::of(instance, best).value(omega.as_slice()))
}

fn reciprocal(rate: f64) -> f64 {
    if rate > 0.0 {
        1.0 / rate
    } else {
        f64::INFINITY
    }
}

/// Maximizes the information rate over the simplex.
pub fn solve_characteristic_time(instance: &Instance, cfg: &SolverConfig) -> Result<SolverResult> {
    let best = instance.check_identifiable()?;
    if instance.family().is_bernoulli() && cfg.mode == FeedbackMode::Uninformed {
        return Err(Error::Unidentifiable(
            "Bernoulli rewards with unrevealed activations carry no information about the best vertex".into(),
        ));
    }
    let k = instance.k();
    let objective = Objective::of(instance, best);
    let uniform = Allocation::uniform(k).into_vec();
    let mut biased: Vec<f64> = uniform.iter().map(|w| 0.5 * w).collect();
    biased[best] += 0.5;
    let mut starts = vec![uniform];
    if let Ok(h) = heuristic_allocation(instance) {
        starts.push(h.into_vec());
    }
    starts.push(biased);

    let mut best_run: Option<(Vec<f64>, f64, Vec<f64>)> = None;
    let mut iterations = 0;
    for start in &starts {
        let mut trace = Vec::with_capacity(cfg.max_iterations + 1);
        let (omega, value) = objective.ascend(start, cfg.max_iterations, cfg.step_scale, 0, Some(&mut trace));
        iterations += trace.len().saturating_sub(1);
        if best_run.as_ref().is_none_or(|(_, v, _)| value > *v) {
            best_run = Some((omega, value, trace));
        }
    }
    let (omega, value, trace) = best_run.expect("at least one restart");
    let window = cfg.tail_window.clamp(1, trace.len());
    let tail_min = trace[trace.len() - window..].iter().copied().fold(f64::INFINITY, f64::min);
    let gap_estimate = if value > 0.0 { ((value - tail_min) / value).max(0.0) } else { 0.0 };
    let omega_star = Allocation::normalized(omega)?;
    let per_alt_values = objective.per_alt(omega_star.as_slice());
    let min_alt = per_alt_values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(SolverResult {
        t_star: reciprocal(min_alt),
        omega_star,
        per_alt_values,
        best_vertex: best,
        iterations,
        gap_estimate,
    })
}

/// Short warm-started refinement used inside sequential algorithms.
pub(crate) fn refine_allocation(objective: &Objective<'_>, start: &[f64], iterations: usize) -> Vec<f64> {
    objective.ascend(start, iterations, SolverConfig::default().step_scale, 100, None).0
}
