use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::FeedbackGraph;
use crate::error::{Error, Result};

/// Named graph generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFamily {
    Bandit,
    AppleTasting,
    RevealingAction,
    FullFeedback,
    LoopyStar,
    LoopyStarAlt,
    Ring,
    LooplessClique,
}

impl GraphFamily {
    pub const ALL: [GraphFamily; 8] = [
        GraphFamily::Bandit,
        GraphFamily::AppleTasting,
        GraphFamily::RevealingAction,
        GraphFamily::FullFeedback,
        GraphFamily::LoopyStar,
        GraphFamily::LoopyStarAlt,
        GraphFamily::Ring,
        GraphFamily::LooplessClique,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphFamily::Bandit => "bandit",
            GraphFamily::AppleTasting => "apple_tasting",
            GraphFamily::RevealingAction => "revealing_action",
            GraphFamily::FullFeedback => "full_feedback",
            GraphFamily::LoopyStar => "loopy_star",
            GraphFamily::LoopyStarAlt => "loopy_star_alt",
            GraphFamily::Ring => "ring",
            GraphFamily::LooplessClique => "loopless_clique",
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    /// Accepts snake_case or kebab-case names.
    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().replace('-', "_");
        GraphFamily::ALL
            .into_iter()
            .find(|f| f.name() == normalized)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Optional generator parameters. Which ones are required depends on the family.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphParams {
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub r: Option<f64>,
}

impl GraphParams {
    pub fn pqr(p: f64, q: f64, r: f64) -> Self {
        Self { p: Some(p), q: Some(q), r: Some(r) }
    }

    pub fn with_p(p: f64) -> Self {
        Self { p: Some(p), ..Self::default() }
    }
}

fn checked(name: &str, value: Option<f64>) -> Result<Option<f64>> {
    match value {
        Some(v) if !(0.0..=1.0).contains(&v) => {
            Err(Error::ParameterRange { name: name.to_string(), value: v })
        }
        other => Ok(other),
    }
}

fn required(name: &str, value: Option<f64>) -> Result<f64> {
    value.ok_or_else(|| Error::MissingParameter(name.to_string()))
}

/// Builds a graph of the given family on `k` vertices.
///
/// Star graphs use vertex `0` as the hub and `k - 1` as the vertex reached
/// with probability `p`. In the ring, `u` reaches `u + 1` with probability `p`
/// and `u - 1` with probability `1 - p` (indices mod `k`).
pub fn generate_graph(family: GraphFamily, k: usize, params: &GraphParams) -> Result<FeedbackGraph> {
    if k == 0 {
        return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
    }
    let p = checked("p", params.p)?;
    let q = checked("q", params.q)?;
    let r = checked("r", params.r)?;
    let mut w = vec![0.0; k * k];
    let idx = |u: usize, v: usize| u * k + v;
    match family {
        GraphFamily::Bandit => return Ok(FeedbackGraph::identity(k)),
        GraphFamily::AppleTasting => {
            if k != 2 {
                return Err(Error::InvalidGraph(format!("apple tasting needs k = 2, got {k}")));
            }
            w[idx(0, 0)] = 1.0;
            w[idx(0, 1)] = 1.0;
        }
        GraphFamily::RevealingAction => {
            for v in 0..k {
                w[idx(0, v)] = 1.0;
            }
        }
        GraphFamily::FullFeedback => w.iter_mut().for_each(|x| *x = 1.0),
        GraphFamily::LoopyStar | GraphFamily::LoopyStarAlt => {
            if k < 2 {
                return Err(Error::InvalidGraph("a loopy star needs k >= 2".into()));
            }
            let (p, q, r) = if family == GraphFamily::LoopyStar {
                (required("p", p)?, required("q", q)?, required("r", r)?)
            } else {
                let p = p.unwrap_or(0.0);
                let q = q.unwrap_or(0.25);
                let r = r.unwrap_or((1.0 - 2.0 * q) / (4.0 * (k as f64 - 1.0)));
                (p, q, checked("r", Some(r))?.unwrap())
            };
            let last = k - 1;
            w[idx(0, 0)] = q;
            w[idx(0, last)] = p;
            w[idx(last, last)] = 1.0 - p;
            for u in 1..last {
                w[idx(0, u)] = r;
                w[idx(u, u)] = (1.0 - 2.0 * p).max(0.0);
            }
        }
        GraphFamily::Ring => {
            if k < 3 {
                return Err(Error::InvalidGraph(format!("a ring needs k >= 3, got {k}")));
            }
            let p = required("p", p)?;
            for u in 0..k {
                w[idx(u, (u + 1) % k)] = p;
                w[idx(u, (u + k - 1) % k)] = 1.0 - p;
            }
        }
        GraphFamily::LooplessClique => {
            let p = required("p", p)?;
            for u in 0..k {
                // Weights depend on 1-based indices.
                let rank = (u + 1) as f64;
                for v in (0..k).filter(|&v| v != u) {
                    w[idx(u, v)] = if (v + 1) % 2 == 1 { p / rank } else { 1.0 - p / rank };
                }
            }
        }
    }
    FeedbackGraph::new(k, w)
}
