use serde::Serialize;

use super::{glrt_statistic, AlgorithmId, EstimatorState, Smoothing, StoppingConfig, StoppingRule, ThresholdKind};
use crate::error::{Error, Result};
use crate::model::{FeedbackMode, Instance};
use crate::sim::{Environment, Observation};
use crate::solver::{solve_characteristic_time, SolverConfig};

/// An identification problem: an instance, a feedback mode and its
/// characteristic time.
#[derive(Debug, Clone)]
pub struct Problem {
    instance: Instance,
    mode: FeedbackMode,
    best: usize,
    t_star: f64,
}

impl Problem {
    /// Validates the instance and solves for its characteristic time.
    pub fn new(instance: Instance, mode: FeedbackMode) -> Result<Self> {
        Self::check(&instance, mode)?;
        let cfg = SolverConfig { mode, ..SolverConfig::default() };
        let t_star = solve_characteristic_time(&instance, &cfg)?.t_star;
        Self::with_t_star(instance, mode, t_star)
    }

    /// Like [`Problem::new`] with a known characteristic time.
    pub fn with_t_star(instance: Instance, mode: FeedbackMode, t_star: f64) -> Result<Self> {
        let best = Self::check(&instance, mode)?;
        Ok(Self { instance, mode, best, t_star })
    }

    fn check(instance: &Instance, mode: FeedbackMode) -> Result<usize> {
        let best = instance.check_identifiable()?;
        if instance.family().is_bernoulli() && mode == FeedbackMode::Uninformed {
            return Err(Error::Unidentifiable(
                "Bernoulli rewards need informed feedback to be identifiable".into(),
            ));
        }
        Ok(best)
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn mode(&self) -> FeedbackMode {
        self.mode
    }

    pub fn best(&self) -> usize {
        self.best
    }

    pub fn t_star(&self) -> f64 {
        self.t_star
    }
}

/// What a sampling rule sees at the start of a round.
pub struct RoundContext<'a> {
    pub problem: &'a Problem,
    pub est: &'a EstimatorState,
}

/// Chooses vertices; stopping and recommendation are shared by all rules.
pub trait SamplingRule {
    fn select(&mut self, ctx: &RoundContext<'_>) -> usize;

    /// Called after the estimates have absorbed `obs`.
    fn observe(&mut self, _obs: &Observation, _ctx: &RoundContext<'_>) {}
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub stopping: StoppingConfig,
    /// Rounds after which a run is abandoned and flagged as truncated.
    pub max_rounds: u64,
    pub smoothing: Smoothing,
}

impl RunConfig {
    pub const DEFAULT_MAX_ROUNDS: u64 = 10_000_000;

    pub fn new(stopping: StoppingConfig) -> Self {
        Self { stopping, max_rounds: Self::DEFAULT_MAX_ROUNDS, smoothing: Smoothing::Average }
    }
}

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub algorithm: AlgorithmId,
    pub seed: u64,
    pub delta: f64,
    pub threshold_kind: ThresholdKind,
    pub tau: u64,
    pub a_hat: usize,
    pub correct: bool,
    pub t_star: f64,
    /// `tau / (t_star * kl(delta, 1 - delta))`.
    pub normalized: f64,
    pub truncated: bool,
    /// First round at which every vertex had been observed.
    pub first_valid_t: Option<u64>,
    pub statistic_at_tau: f64,
    pub threshold_at_tau: f64,
    /// Statistic and threshold one round before stopping, when defined.
    pub statistic_before: Option<f64>,
    pub threshold_before: Option<f64>,
    pub n_pulls: Vec<u64>,
}

/// `kl(delta, 1 - delta)`, written so that it stays finite when `1 - delta` rounds to `1`.
pub fn confidence_kl(delta: f64) -> f64 {
    (1.0 - 2.0 * delta) * ((-delta).ln_1p() - delta.ln())
}

/// Runs `rule` on `problem` until the likelihood-ratio test fires or the
/// round cap is hit.
pub fn run_with_rule(
    problem: &Problem,
    rule: &mut dyn SamplingRule,
    algorithm: AlgorithmId,
    cfg: &RunConfig,
    seed: u64,
) -> RunRecord {
    let instance = problem.instance();
    let family = instance.family();
    let stopping = StoppingRule::new(cfg.stopping, instance.k());
    let mut env = Environment::new(instance, problem.mode(), seed, 0);
    let mut est = EstimatorState::new(instance.k());
    let mut first_valid_t = None;
    let mut previous: Option<(f64, f64)> = None;
    let mut last = (0.0, stopping.threshold(1));
    let mut truncated = false;
    loop {
        let t = est.t();
        if est.all_observed() {
            first_valid_t.get_or_insert(t);
            let stat = glrt_statistic(&est, family);
            let beta = stopping.threshold(t);
            if stat >= beta {
                last = (stat, beta);
                break;
            }
            previous = Some((stat, beta));
            last = (stat, beta);
        }
        if t >= cfg.max_rounds {
            truncated = true;
            break;
        }
        let v = rule.select(&RoundContext { problem, est: &est });
        let obs = env.step(v);
        est.update(&obs, problem.mode());
        rule.observe(&obs, &RoundContext { problem, est: &est });
    }
    let tau = est.t();
    let a_hat = est.empirical_best().unwrap_or(0);
    let kl_norm = confidence_kl(cfg.stopping.delta);
    let before = if truncated { None } else { previous };
    RunRecord {
        algorithm,
        seed,
        delta: cfg.stopping.delta,
        threshold_kind: cfg.stopping.kind,
        tau,
        a_hat,
        correct: a_hat == problem.best(),
        t_star: problem.t_star(),
        normalized: tau as f64 / (problem.t_star() * kl_norm),
        truncated,
        first_valid_t,
        statistic_at_tau: last.0,
        threshold_at_tau: last.1,
        statistic_before: before.map(|p| p.0),
        threshold_before: before.map(|p| p.1),
        n_pulls: est.n_pulls().to_vec(),
    }
}
