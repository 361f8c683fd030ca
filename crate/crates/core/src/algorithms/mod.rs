//! Sequential identification algorithms sharing one stopping rule.

mod estimator;
mod exp3g;
mod runner;
mod stopping;
mod tas;
mod tracking;
mod ucb;

pub use estimator::EstimatorState;
pub use exp3g::Exp3G;
pub use runner::{confidence_kl, run_with_rule, Problem, RoundContext, RunConfig, RunRecord, SamplingRule};
pub use stopping::{c_exp, glrt_statistic, h, h_inverse, threshold, StoppingConfig, StoppingRule, ThresholdKind};
pub use tas::{AllocationSource, TrackAndStop};
pub use tracking::{select_vertex_dtracking, Smoothing, TrackingState};
pub use ucb::{g_ucb, mu_ucb, UcbFg, UcbVariant};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgorithmId {
    #[serde(rename = "tas-fg")]
    TasFg,
    #[serde(rename = "tas-fg-heur")]
    TasFgHeur,
    #[serde(rename = "exp3g")]
    Exp3G,
    #[serde(rename = "ucb-fg-e")]
    UcbFgE,
    #[serde(rename = "ucb-fg-v")]
    UcbFgV,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 5] =
        [AlgorithmId::TasFg, AlgorithmId::TasFgHeur, AlgorithmId::Exp3G, AlgorithmId::UcbFgE, AlgorithmId::UcbFgV];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::TasFg => "tas-fg",
            AlgorithmId::TasFgHeur => "tas-fg-heur",
            AlgorithmId::Exp3G => "exp3g",
            AlgorithmId::UcbFgE => "ucb-fg-e",
            AlgorithmId::UcbFgV => "ucb-fg-v",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.as_str() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

/// Runs algorithm `id` once with the environment and algorithm streams keyed by `seed`.
pub fn run_algorithm(problem: &Problem, id: AlgorithmId, cfg: &RunConfig, seed: u64) -> RunRecord {
    let k = problem.instance().k();
    let mut rule: Box<dyn SamplingRule> = match id {
        AlgorithmId::TasFg => Box::new(TrackAndStop::new(k, AllocationSource::Exact, cfg.smoothing)),
        AlgorithmId::TasFgHeur => Box::new(TrackAndStop::new(k, AllocationSource::Heuristic, cfg.smoothing)),
        AlgorithmId::Exp3G => Box::new(Exp3G::new(k, Exp3G::DEFAULT_ETA, seed)),
        AlgorithmId::UcbFgE => Box::new(UcbFg::new(UcbVariant::Expected)),
        AlgorithmId::UcbFgV => Box::new(UcbFg::new(UcbVariant::Visit)),
    };
    run_with_rule(problem, rule.as_mut(), id, cfg, seed)
}

/// Track-and-stop with exact or heuristic allocations.
pub fn run_tas_fg(problem: &Problem, source: AllocationSource, cfg: &RunConfig, seed: u64) -> RunRecord {
    let id = match source {
        AllocationSource::Exact => AlgorithmId::TasFg,
        AllocationSource::Heuristic => AlgorithmId::TasFgHeur,
    };
    run_algorithm(problem, id, cfg, seed)
}

pub fn run_exp3g(problem: &Problem, cfg: &RunConfig, seed: u64) -> RunRecord {
    run_algorithm(problem, AlgorithmId::Exp3G, cfg, seed)
}

pub fn run_ucb_fg(problem: &Problem, variant: UcbVariant, cfg: &RunConfig, seed: u64) -> RunRecord {
    let id = match variant {
        UcbVariant::Expected => AlgorithmId::UcbFgE,
        UcbVariant::Visit => AlgorithmId::UcbFgV,
    };
    run_algorithm(problem, id, cfg, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, FeedbackGraph, GraphFamily, GraphParams};
    use crate::model::{FeedbackMode, Instance, RewardFamily};

    const UNIT: RewardFamily = RewardFamily::Gaussian { variance: 1.0 };

    fn loopy_star() -> Problem {
        let g = generate_graph(GraphFamily::LoopyStar, 5, &GraphParams::pqr(0.2, 0.25, 0.25)).unwrap();
        let inst = Instance::new(g, UNIT, vec![0.5, 0.5, 0.5, 0.5, 1.0]).unwrap();
        Problem::new(inst, FeedbackMode::Uninformed).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for id in AlgorithmId::ALL {
            assert_eq!(id.as_str().parse::<AlgorithmId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
        }
        assert!("ucb".parse::<AlgorithmId>().is_err());
    }

    #[test]
    fn every_algorithm_stops_and_satisfies_the_stopping_rule() {
        let problem = loopy_star();
        let cfg = RunConfig::new(StoppingConfig::new(ThresholdKind::Practical, 0.1).unwrap());
        for id in AlgorithmId::ALL {
            let rec = run_algorithm(&problem, id, &cfg, 3);
            assert!(!rec.truncated, "{id}");
            assert!(rec.statistic_at_tau >= rec.threshold_at_tau);
            if rec.tau > rec.first_valid_t.unwrap() {
                assert!(rec.statistic_before.unwrap() < rec.threshold_before.unwrap());
            }
            assert_eq!(rec.n_pulls.iter().sum::<u64>(), rec.tau);
            assert!(rec.normalized > 0.0);
        }
    }

    #[test]
    fn runs_are_reproducible() {
        let problem = loopy_star();
        let cfg = RunConfig::new(StoppingConfig::new(ThresholdKind::Practical, 0.05).unwrap());
        for id in AlgorithmId::ALL {
            assert_eq!(run_algorithm(&problem, id, &cfg, 11), run_algorithm(&problem, id, &cfg, 11));
        }
    }

    #[test]
    fn truncation_is_flagged() {
        let problem = loopy_star();
        let mut cfg = RunConfig::new(StoppingConfig::new(ThresholdKind::Theoretical, 1e-9).unwrap());
        cfg.max_rounds = 20;
        let rec = run_algorithm(&problem, AlgorithmId::TasFg, &cfg, 0);
        assert!(rec.truncated);
        assert_eq!(rec.tau, 20);
    }

    #[test]
    fn bernoulli_uninformed_is_rejected() {
        let inst = Instance::new(FeedbackGraph::identity(2), RewardFamily::Bernoulli, vec![0.3, 0.6]).unwrap();
        assert!(Problem::new(inst.clone(), FeedbackMode::Uninformed).is_err());
        let problem = Problem::new(inst, FeedbackMode::Informed).unwrap();
        let cfg = RunConfig::new(StoppingConfig::new(ThresholdKind::Practical, 0.1).unwrap());
        assert!(!run_algorithm(&problem, AlgorithmId::TasFg, &cfg, 1).truncated);
    }

    #[test]
    fn exp3g_probabilities_have_floor_and_ignore_zero_feedback() {
        let problem = loopy_star();
        let est = EstimatorState::new(5);
        let mut rule = Exp3G::new(5, 0.3, 0);
        let before = rule.probabilities().to_vec();
        let obs = crate::sim::Observation { chosen: 2, z: vec![0.0; 5], activated: None };
        rule.observe(&obs, &RoundContext { problem: &problem, est: &est });
        assert_eq!(rule.probabilities(), before.as_slice());
        let obs = crate::sim::Observation { chosen: 0, z: vec![5.0, 0.0, 0.0, 0.0, 9.0], activated: None };
        for _ in 0..50 {
            rule.observe(&obs, &RoundContext { problem: &problem, est: &est });
        }
        assert!(rule.probabilities().iter().all(|&p| p >= 0.3 / 5.0 - 1e-15));
    }

    #[test]
    fn ucb_forced_initialization() {
        let problem = loopy_star();
        let mut est = EstimatorState::new(5);
        let mut rule = UcbFg::new(UcbVariant::Expected);
        assert_eq!(rule.select(&RoundContext { problem: &problem, est: &est }), 0);
        est.update(
            &crate::sim::Observation { chosen: 0, z: vec![0.4, 0.0, 0.0, 0.0, 0.0], activated: None },
            FeedbackMode::Uninformed,
        );
        assert_eq!(rule.select(&RoundContext { problem: &problem, est: &est }), 1);
        assert!((0..5).all(|u| g_ucb(&est, 0, u) <= 1.0));
    }
}
