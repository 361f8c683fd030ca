//! Campaign configuration files.
//!
//! A configuration is a TOML document with one `[[campaign]]` table per
//! campaign:
//!
//! ```toml
//! [[campaign]]
//! name = "ring"
//! graph = "ring"
//! k = 5
//! p = 0.3
//! means = "linear"
//! algorithms = ["tas-fg", "exp3g"]
//! deltas = ["exp(-7)", 0.01]
//! seed_count = 100
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::algorithms::{AlgorithmId, Problem, RunConfig, StoppingConfig, ThresholdKind};
use crate::error::{Error, Result};
use crate::graph::{generate_graph, FeedbackGraph, GraphFamily, GraphParams};
use crate::model::{FeedbackMode, Instance, RewardFamily};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub campaign: Vec<CampaignConfig>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum MeansSpec {
    List(Vec<f64>),
    Rule(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum DeltaSpec {
    Value(f64),
    Expr(String),
}

impl DeltaSpec {
    /// Accepts plain numbers and `exp(x)`.
    pub fn value(&self) -> Result<f64> {
        let v = match self {
            DeltaSpec::Value(v) => *v,
            DeltaSpec::Expr(s) => {
                let s = s.trim();
                let parsed = match s.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
                    Some(inner) => inner.trim().parse::<f64>().map(f64::exp),
                    None => s.parse::<f64>(),
                };
                parsed.map_err(|_| Error::Config(format!("cannot parse delta `{s}`")))?
            }
        };
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Config(format!("delta {v} is outside (0, 1)")));
        }
        Ok(v)
    }
}

fn default_variance() -> f64 {
    1.0
}

fn default_family() -> String {
    "gaussian".into()
}

fn default_seed_count() -> u64 {
    100
}

fn default_max_rounds() -> u64 {
    RunConfig::DEFAULT_MAX_ROUNDS
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub name: String,
    /// A generator name, or `custom` together with `weights`.
    pub graph: String,
    pub k: Option<usize>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub r: Option<f64>,
    /// Row-major weights for `graph = "custom"`.
    pub weights: Option<Vec<Vec<f64>>>,
    #[serde(default = "default_family")]
    pub family: String,
    #[serde(default = "default_variance")]
    pub variance: f64,
    /// `linear`, `best-1-rest-0.5` or an explicit list.
    pub means: MeansSpec,
    /// Best vertex for `best-1-rest-0.5` (default: the last vertex).
    pub best_vertex: Option<usize>,
    #[serde(default)]
    pub mode: FeedbackMode,
    #[serde(default)]
    pub algorithms: Vec<AlgorithmId>,
    #[serde(default)]
    pub deltas: Vec<DeltaSpec>,
    #[serde(default)]
    pub seed_start: u64,
    #[serde(default = "default_seed_count")]
    pub seed_count: u64,
    #[serde(default)]
    pub threshold: ThresholdKind,
    #[serde(default = "default_max_rounds")]
    pub max_rounds: u64,
}

/// A campaign with its instance built and validated.
#[derive(Debug, Clone)]
pub struct ResolvedCampaign {
    pub config: CampaignConfig,
    pub problem: Problem,
    pub deltas: Vec<f64>,
}

impl ResolvedCampaign {
    pub fn name(&self) -> &str {
        &self.config.name
    }

    pub fn run_config(&self, delta: f64) -> Result<RunConfig> {
        let mut cfg = RunConfig::new(StoppingConfig::new(self.config.threshold, delta)?);
        cfg.max_rounds = self.config.max_rounds;
        Ok(cfg)
    }

    pub fn seeds(&self) -> std::ops::Range<u64> {
        self.config.seed_start..self.config.seed_start + self.config.seed_count
    }
}

fn config_error(campaign: &str, e: Error) -> Error {
    match e {
        Error::Config(msg) => Error::Config(format!("campaign `{campaign}`: {msg}")),
        other => Error::Config(format!("campaign `{campaign}`: {other}")),
    }
}

impl CampaignConfig {
    pub fn graph(&self) -> Result<FeedbackGraph> {
        if self.graph == "custom" {
            let rows = self
                .weights
                .as_ref()
                .ok_or_else(|| Error::Config("`graph = \"custom\"` needs `weights`".into()))?;
            return FeedbackGraph::from_rows(rows);
        }
        let family: GraphFamily = self.graph.parse()?;
        let k = self.k.ok_or_else(|| Error::Config("missing field `k`".into()))?;
        generate_graph(family, k, &GraphParams { p: self.p, q: self.q, r: self.r })
    }

    pub fn reward_family(&self) -> Result<RewardFamily> {
        match self.family.as_str() {
            "gaussian" => RewardFamily::gaussian(self.variance),
            "bernoulli" => Ok(RewardFamily::Bernoulli),
            other => Err(Error::Config(format!("unknown reward family `{other}`"))),
        }
    }

    pub fn means(&self, k: usize) -> Result<Vec<f64>> {
        match &self.means {
            MeansSpec::List(v) => Ok(v.clone()),
            MeansSpec::Rule(rule) => match rule.as_str() {
                "linear" if k == 1 => Ok(vec![0.0]),
                "linear" => Ok((0..k).map(|u| u as f64 / (k - 1) as f64).collect()),
                "best-1-rest-0.5" => {
                    let best = self.best_vertex.unwrap_or(k - 1);
                    if best >= k {
                        return Err(Error::Config(format!("best_vertex {best} is out of range")));
                    }
                    Ok((0..k).map(|u| if u == best { 1.0 } else { 0.5 }).collect())
                }
                other => Err(Error::Config(format!("unknown mean rule `{other}`"))),
            },
        }
    }

    pub fn instance(&self) -> Result<Instance> {
        let graph = self.graph()?;
        let means = self.means(graph.k())?;
        Instance::new(graph, self.reward_family()?, means)
    }

    /// Builds the instance, checks identifiability and solves for its characteristic time.
    pub fn resolve(&self) -> Result<ResolvedCampaign> {
        let wrap = |e| config_error(&self.name, e);
        let instance = self.instance().map_err(wrap)?;
        let problem = Problem::new(instance, self.mode).map_err(wrap)?;
        let deltas = self.deltas.iter().map(DeltaSpec::value).collect::<Result<Vec<_>>>().map_err(wrap)?;
        Ok(ResolvedCampaign { config: self.clone(), problem, deltas })
    }
}

impl ExperimentFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ExperimentFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if file.campaign.is_empty() {
            return Err(Error::Config("no [[campaign]] table".into()));
        }
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read `{}`: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// The named campaign, or the first one when `name` is `None`.
    pub fn campaign(&self, name: Option<&str>) -> Result<&CampaignConfig> {
        match name {
            None => Ok(&self.campaign[0]),
            Some(n) => self
                .campaign
                .iter()
                .find(|c| c.name == n)
                .ok_or_else(|| Error::Config(format!("no campaign named `{n}`"))),
        }
    }
}
