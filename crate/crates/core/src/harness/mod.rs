//! Experiment campaigns: configuration, parallel execution, CSV output and summaries.

mod campaign;
mod config;
mod summary;

pub use campaign::{default_workers, read_csv, run_campaign, write_csv, CsvRow, CSV_HEADER};
pub use config::{CampaignConfig, DeltaSpec, ExperimentFile, MeansSpec, ResolvedCampaign};
pub use summary::{quantile, summarize, CellSummary, Stats};

use serde::Serialize;

/// Summary document written next to a campaign CSV.
#[derive(Debug, Clone, Serialize)]
pub struct CampaignSummary {
    pub campaign: String,
    pub t_star: f64,
    pub best_vertex: usize,
    pub cells: Vec<CellSummary>,
}

impl CampaignSummary {
    pub fn new(campaign: &ResolvedCampaign, records: &[crate::algorithms::RunRecord]) -> Self {
        let rows: Vec<CsvRow> = records.iter().map(CsvRow::from).collect();
        CampaignSummary {
            campaign: campaign.name().to_string(),
            t_star: campaign.problem.t_star(),
            best_vertex: campaign.problem.best(),
            cells: summarize(&rows),
        }
    }
}
