//! Reward families, divergences and problem instances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{classify_observability, FeedbackGraph};

/// One-parameter exponential family of the per-vertex rewards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RewardFamily {
    /// Gaussian with known variance.
    Gaussian { variance: f64 },
    Bernoulli,
}

impl RewardFamily {
    pub fn gaussian(variance: f64) -> Result<Self> {
        if !(variance > 0.0 && variance.is_finite()) {
            return Err(Error::Domain(format!("variance must be positive, got {variance}")));
        }
        Ok(RewardFamily::Gaussian { variance })
    }

    pub fn is_bernoulli(&self) -> bool {
        matches!(self, RewardFamily::Bernoulli)
    }

    /// Checks that `mu` is a valid (non-degenerate) mean.
    pub fn check_mean(&self, mu: f64) -> Result<()> {
        let ok = match self {
            RewardFamily::Gaussian { .. } => mu.is_finite(),
            RewardFamily::Bernoulli => mu > 0.0 && mu < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("mean {mu} is invalid for {self:?}")))
        }
    }

    /// KL divergence between the members with means `mu1` and `mu2`.
    pub fn kl(&self, mu1: f64, mu2: f64) -> Result<f64> {
        self.check_mean(mu1)?;
        self.check_mean(mu2)?;
        Ok(self.divergence(mu1, mu2))
    }

    /// Generalized Jensen-Shannon divergence with weight `alpha` on the first
    /// member; the mixture is the family member with the mixed mean.
    pub fn gjs(&self, mu1: f64, mu2: f64, alpha: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Domain(format!("mixture weight {alpha} is outside [0, 1]")));
        }
        self.check_mean(mu1)?;
        self.check_mean(mu2)?;
        let mix = alpha * mu1 + (1.0 - alpha) * mu2;
        Ok(alpha * self.divergence(mu1, mix) + (1.0 - alpha) * self.divergence(mu2, mix))
    }

    /// Unchecked divergence. Bernoulli arguments at the boundary follow the
    /// `0 ln 0 = 0` convention and may return `+inf`.
    #[inline]
    pub(crate) fn divergence(&self, mu1: f64, mu2: f64) -> f64 {
        match *self {
            RewardFamily::Gaussian { variance } => {
                let d = mu1 - mu2;
                d * d / (2.0 * variance)
            }
            RewardFamily::Bernoulli => bern_kl_extended(mu1, mu2),
        }
    }
}

/// KL divergence within `family`.
pub fn kl(family: &RewardFamily, mu1: f64, mu2: f64) -> Result<f64> {
    family.kl(mu1, mu2)
}

/// Generalized Jensen-Shannon divergence within `family`.
pub fn gjs(family: &RewardFamily, mu1: f64, mu2: f64, alpha: f64) -> Result<f64> {
    family.gjs(mu1, mu2, alpha)
}

/// Bernoulli divergence `kl(x, y)` for `x, y` in `(0, 1)`.
pub fn bern_kl(x: f64, y: f64) -> Result<f64> {
    RewardFamily::Bernoulli.kl(x, y)
}

pub(crate) fn bern_kl_extended(x: f64, y: f64) -> f64 {
    fn term(a: f64, b: f64) -> f64 {
        if a == 0.0 {
            0.0
        } else if b == 0.0 {
            f64::INFINITY
        } else {
            a * (a / b).ln()
        }
    }
    (term(x, y) + term(1.0 - x, 1.0 - y)).max(0.0)
}

/// Whether the learner sees which edges fired.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeedbackMode {
    Informed,
    #[default]
    Uninformed,
}

impl std::str::FromStr for FeedbackMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "informed" => Ok(FeedbackMode::Informed),
            "uninformed" => Ok(FeedbackMode::Uninformed),
            other => Err(Error::Config(format!("unknown feedback mode `{other}`"))),
        }
    }
}

impl std::fmt::Display for FeedbackMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FeedbackMode::Informed => "informed",
            FeedbackMode::Uninformed => "uninformed",
        })
    }
}

/// A feedback graph together with per-vertex reward distributions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    graph: FeedbackGraph,
    family: RewardFamily,
    means: Vec<f64>,
}

impl Instance {
    pub fn new(graph: FeedbackGraph, family: RewardFamily, means: Vec<f64>) -> Result<Self> {
        if means.len() != graph.k() {
            return Err(Error::Domain(format!(
                "{} means given for {} vertices",
                means.len(),
                graph.k()
            )));
        }
        for &mu in &means {
            family.check_mean(mu)?;
        }
        Ok(Self { graph, family, means })
    }

    pub fn graph(&self) -> &FeedbackGraph {
        &self.graph
    }

    pub fn family(&self) -> RewardFamily {
        self.family
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn k(&self) -> usize {
        self.graph.k()
    }

    /// The unique vertex with the largest mean.
    pub fn best_vertex(&self) -> Result<usize> {
        let max = self.means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut best = self.means.iter().enumerate().filter(|(_, &m)| m == max).map(|(u, _)| u);
        let first = best.next().ok_or(Error::AmbiguousBest)?;
        if best.next().is_some() {
            return Err(Error::AmbiguousBest);
        }
        Ok(first)
    }

    /// Gaps `mu_best - mu_u`, with the best vertex's entry set to the minimum gap.
    pub fn gaps(&self) -> Result<Vec<f64>> {
        let best = self.best_vertex()?;
        let top = self.means[best];
        let mut gaps: Vec<f64> = self.means.iter().map(|&m| top - m).collect();
        let min_gap = gaps
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != best)
            .map(|(_, &g)| g)
            .fold(f64::INFINITY, f64::min);
        gaps[best] = min_gap;
        Ok(gaps)
    }

    /// Fails unless every vertex is observable and the best vertex is unique.
    pub fn check_identifiable(&self) -> Result<usize> {
        if let Some(v) = self.graph.first_unobservable() {
            return Err(Error::NotObservable(v));
        }
        self.best_vertex()
    }

    pub fn is_observable(&self) -> bool {
        classify_observability(&self.graph).is_observable()
    }
}
