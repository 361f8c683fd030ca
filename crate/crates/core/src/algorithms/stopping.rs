use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::EstimatorState;
use crate::error::{Error, Result};
use crate::model::RewardFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdKind {
    /// Threshold with a proven error guarantee.
    Theoretical,
    /// Smaller threshold used in experiments.
    #[default]
    Practical,
}

impl ThresholdKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ThresholdKind::Theoretical => "theoretical",
            ThresholdKind::Practical => "practical",
        }
    }
}

impl fmt::Display for ThresholdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ThresholdKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "theoretical" => Ok(ThresholdKind::Theoretical),
            "practical" => Ok(ThresholdKind::Practical),
            other => Err(Error::Config(format!("unknown threshold kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StoppingConfig {
    pub kind: ThresholdKind,
    pub delta: f64,
}

impl StoppingConfig {
    pub fn new(kind: ThresholdKind, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::Domain(format!("confidence level {delta} is outside (0, 1)")));
        }
        Ok(Self { kind, delta })
    }
}

/// `h(u) = u - ln u` on `[1, inf)`.
pub fn h(u: f64) -> f64 {
    u - u.ln()
}

/// Inverse of [`h`] for `y >= 1`, by safeguarded Newton iteration.
pub fn h_inverse(y: f64) -> f64 {
    assert!(y >= 1.0, "h is only inverted on [1, inf)");
    if y == 1.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (1.0f64, 2.0 * y + 2.0);
    let mut u = y + y.ln().max(0.0) + 1.0;
    for _ in 0..200 {
        let f = h(u) - y;
        if f > 0.0 {
            hi = hi.min(u);
        } else {
            lo = lo.max(u);
        }
        let step = f / (1.0 - 1.0 / u);
        let mut next = u - step;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - u).abs() <= 1e-15 * u {
            return next;
        }
        u = next;
    }
    u
}

fn h_tilde(z: f64, x: f64) -> f64 {
    let ln_z = z.ln();
    if x >= h(1.0 / ln_z) {
        let u = h_inverse(x);
        u * (1.0 / u).exp()
    } else {
        z * (x - ln_z.ln())
    }
}

/// Calibration function of the theoretical threshold.
pub fn c_exp(x: f64) -> f64 {
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    2.0 * h_tilde(1.5, (h_inverse(1.0 + x) + (2.0 * zeta2).ln()) / 2.0)
}

/// `beta(t, delta)` with the time-independent part precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingRule {
    cfg: StoppingConfig,
    constant: f64,
}

impl StoppingRule {
    pub fn new(cfg: StoppingConfig, k: usize) -> Self {
        let constant = match cfg.kind {
            ThresholdKind::Theoretical => {
                2.0 * c_exp(((k.max(2) - 1) as f64 / cfg.delta).ln() / 2.0)
            }
            ThresholdKind::Practical => (1.0 / cfg.delta).ln(),
        };
        Self { cfg, constant }
    }

    pub fn config(&self) -> StoppingConfig {
        self.cfg
    }

    pub fn threshold(&self, t: u64) -> f64 {
        let lt = (t.max(1) as f64).ln();
        match self.cfg.kind {
            ThresholdKind::Theoretical => self.constant + 6.0 * (1.0 + lt).ln(),
            ThresholdKind::Practical => self.constant + 3.0 * (1.0 + 2.0 * lt).ln(),
        }
    }
}

/// Threshold `beta(t, delta)` for `K` vertices.
pub fn threshold(cfg: &StoppingConfig, t: u64, k: usize) -> f64 {
    StoppingRule::new(*cfg, k).threshold(t)
}

/// Generalized likelihood ratio statistic; `0` until every vertex has been observed.
pub fn glrt_statistic(est: &EstimatorState, family: RewardFamily) -> f64 {
    if !est.all_observed() {
        return 0.0;
    }
    let best = est.empirical_best().expect("all vertices observed");
    let m = est.m_obs();
    let mu = |u: usize| est.mu_hat(u).expect("all vertices observed");
    let (ma, mua) = (m[best] as f64, mu(best));
    let mut stat = f64::INFINITY;
    for u in (0..est.k()).filter(|&u| u != best) {
        let (mu_n, mu_u) = (m[u] as f64, mu(u));
        let x = (ma * mua + mu_n * mu_u) / (ma + mu_n);
        stat = stat.min(ma * family.divergence(mua, x) + mu_n * family.divergence(mu_u, x));
    }
    if stat.is_finite() {
        stat
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FeedbackMode;
    use crate::sim::Observation;

    #[test]
    fn practical_threshold_at_one() {
        let cfg = StoppingConfig::new(ThresholdKind::Practical, 0.1).unwrap();
        assert!((threshold(&cfg, 1, 5) - 10f64.ln()).abs() < 1e-15);
        assert!(threshold(&cfg, 100, 5) > threshold(&cfg, 10, 5));
        assert!(StoppingConfig::new(ThresholdKind::Practical, 1.0).is_err());
    }

    #[test]
    fn h_inverse_round_trips() {
        for u in [1.5, 3.0, 10.0, 1e6] {
            assert!((h_inverse(h(u)) - u).abs() <= 1e-10 * u, "{u}");
        }
        assert_eq!(h_inverse(1.0), 1.0);
    }

    #[test]
    fn c_exp_dominates_identity() {
        for i in 0..=45 {
            let x = 5.0 + i as f64;
            assert!(c_exp(x) >= x);
        }
        // Independent evaluation with scipy's brentq root finder.
        assert!((c_exp(5.0) - 15.1914).abs() < 1e-3);
        assert!((c_exp(20.0) - 32.9148).abs() < 1e-3);
    }

    fn observe(est: &mut EstimatorState, v: usize, z: Vec<f64>) {
        est.update(&Observation { chosen: v, z, activated: None }, FeedbackMode::Uninformed);
    }

    #[test]
    fn statistic_zero_before_observation_and_for_ties() {
        let unit = RewardFamily::Gaussian { variance: 1.0 };
        let mut est = EstimatorState::new(2);
        observe(&mut est, 0, vec![0.5, 0.0]);
        assert_eq!(glrt_statistic(&est, unit), 0.0);
        observe(&mut est, 1, vec![0.0, 0.5]);
        assert_eq!(glrt_statistic(&est, unit), 0.0);
    }

    #[test]
    fn statistic_on_balanced_counts() {
        let unit = RewardFamily::Gaussian { variance: 1.0 };
        let mut est = EstimatorState::new(2);
        for _ in 0..50 {
            observe(&mut est, 0, vec![1.0, -1.0]);
            observe(&mut est, 0, vec![1.0, 1.0]);
        }
        // M = (100, 100), means (1, 0), pooled mean 0.5: 100 * 0.125 twice.
        assert!((glrt_statistic(&est, unit) - 25.0).abs() < 1e-12);
    }
}
