use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ResolvedCampaign;
use crate::algorithms::{run_algorithm, AlgorithmId, RunRecord, ThresholdKind};
use crate::error::{Error, Result};

/// One line of a campaign CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub seed: u64,
    pub algorithm: AlgorithmId,
    pub delta: f64,
    pub tau: u64,
    pub correct: bool,
    pub a_hat: usize,
    pub t_star: f64,
    pub normalized: f64,
    pub threshold_kind: ThresholdKind,
    pub truncated: bool,
}

pub const CSV_HEADER: [&str; 10] =
    ["seed", "algorithm", "delta", "tau", "correct", "a_hat", "t_star", "normalized", "threshold_kind", "truncated"];

impl From<&RunRecord> for CsvRow {
    fn from(r: &RunRecord) -> Self {
        CsvRow {
            seed: r.seed,
            algorithm: r.algorithm,
            delta: r.delta,
            tau: r.tau,
            correct: r.correct,
            a_hat: r.a_hat,
            t_star: r.t_star,
            normalized: r.normalized,
            threshold_kind: r.threshold_kind,
            truncated: r.truncated,
        }
    }
}

/// Worker count from `FG_EXPLORE_WORKERS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var("FG_EXPLORE_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs every (algorithm, delta, seed) job of a campaign.
///
/// Records come back in algorithm order (as configured), then delta, then
/// seed, whatever the worker count.
pub fn run_campaign(campaign: &ResolvedCampaign, workers: usize) -> Result<Vec<RunRecord>> {
    let mut jobs = Vec::new();
    for &algorithm in &campaign.config.algorithms {
        for &delta in &campaign.deltas {
            let cfg = campaign.run_config(delta)?;
            for seed in campaign.seeds() {
                jobs.push((algorithm, cfg, seed));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    let problem = &campaign.problem;
    Ok(pool.install(|| {
        jobs.par_iter()
            .map(|(algorithm, cfg, seed)| run_algorithm(problem, *algorithm, cfg, *seed))
            .collect()
    }))
}

pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header `{}`", header.join(","))));
    }
    rdr.deserialize().map(|row| row.map_err(Error::from)).collect()
}
