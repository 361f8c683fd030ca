//! Runs a small campaign from an inline configuration and prints the CSV and
//! the summary.
//!
//! cargo run --release --example campaign

use fg_explore::harness::{default_workers, run_campaign, write_csv, CampaignSummary, ExperimentFile};

const CONFIG: &str = r#"
[[campaign]]
name = "ring-small"
graph = "ring"
k = 5
p = 0.3
means = "linear"
algorithms = ["tas-fg-heur", "exp3g"]
deltas = [0.1, "exp(-7)"]
seed_count = 5
"#;

fn main() -> fg_explore::Result<()> {
    let file = ExperimentFile::parse(CONFIG)?;
    let campaign = file.campaign(None)?.resolve()?;
    let records = run_campaign(&campaign, default_workers())?;
    write_csv(&records, std::io::stdout().lock())?;
    let summary = CampaignSummary::new(&campaign, &records);
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}
