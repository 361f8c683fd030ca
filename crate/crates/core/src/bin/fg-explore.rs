use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fg_explore::graph::{classify_observability, graph_quantities, FeedbackGraph, GraphQuantities, ObservabilityReport};
use fg_explore::harness::{
    default_workers, read_csv, run_campaign, summarize, write_csv, CampaignSummary, ExperimentFile,
};
use fg_explore::solver::{solve_characteristic_time, SolverConfig};
use fg_explore::Error;

#[derive(Parser)]
#[command(name = "fg-explore", version, about = "Best-vertex identification with stochastic feedback graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the characteristic time and optimal allocation of a campaign instance.
    CharacTime {
        #[arg(long)]
        config: PathBuf,
        /// Campaign name (default: the first one).
        #[arg(long)]
        campaign: Option<String>,
    },
    /// Print independence/domination numbers and observability classes.
    GraphInfo {
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        config: Option<PathBuf>,
        #[arg(long)]
        campaign: Option<String>,
        /// Plain-text matrix file: `K` then `K` rows of weights.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Run every campaign of a configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        #[arg(long, env = "FG_EXPLORE_WORKERS")]
        workers: Option<usize>,
        /// `csv` writes per-run rows as CSV, `json` as a JSON array. A summary JSON is always written.
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Re-aggregate a campaign CSV.
    Summarize {
        csv: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Serialize)]
struct GraphInfo {
    #[serde(flatten)]
    quantities: GraphQuantities,
    observability: ObservabilityReport,
}

fn print_json<T: Serialize>(value: &T) -> fg_explore::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn graph_info(graph: &FeedbackGraph) -> fg_explore::Result<()> {
    print_json(&GraphInfo { quantities: graph_quantities(graph)?, observability: classify_observability(graph) })
}

fn run(config: &Path, out: &Path, workers: usize, format: Format) -> fg_explore::Result<()> {
    let file = ExperimentFile::load(config)?;
    let campaigns = file.campaign.iter().map(|c| c.resolve()).collect::<fg_explore::Result<Vec<_>>>()?;
    fs::create_dir_all(out)?;
    for campaign in &campaigns {
        let records = run_campaign(campaign, workers)?;
        let stem = out.join(campaign.name());
        match format {
            Format::Csv => write_csv(&records, BufWriter::new(File::create(stem.with_extension("csv"))?))?,
            Format::Json => {
                serde_json::to_writer_pretty(BufWriter::new(File::create(stem.with_extension("runs.json"))?), &records)?
            }
        }
        let summary = CampaignSummary::new(campaign, &records);
        serde_json::to_writer_pretty(BufWriter::new(File::create(stem.with_extension("summary.json"))?), &summary)?;
        eprintln!("{}: {} runs written to {}", campaign.name(), records.len(), out.display());
    }
    Ok(())
}

fn summarize_csv(path: &Path, format: Format) -> fg_explore::Result<()> {
    let rows = read_csv(File::open(path)?)?;
    let cells = summarize(&rows);
    match format {
        Format::Json => print_json(&cells),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record([
                "algorithm", "delta", "threshold_kind", "count", "errors", "error_rate", "truncated", "t_star",
                "tau_median", "tau_q1", "tau_q3", "normalized_mean", "normalized_median", "normalized_q1",
                "normalized_q3",
            ])?;
            for c in &cells {
                w.write_record([
                    c.algorithm.to_string(),
                    c.delta.to_string(),
                    c.threshold_kind.to_string(),
                    c.count.to_string(),
                    c.errors.to_string(),
                    c.error_rate.to_string(),
                    c.truncated.to_string(),
                    c.t_star.to_string(),
                    c.tau.median.to_string(),
                    c.tau.q1.to_string(),
                    c.tau.q3.to_string(),
                    c.normalized.mean.to_string(),
                    c.normalized.median.to_string(),
                    c.normalized.q1.to_string(),
                    c.normalized.q3.to_string(),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> fg_explore::Result<()> {
    match cli.command {
        Command::CharacTime { config, campaign } => {
            let file = ExperimentFile::load(&config)?;
            let c = file.campaign(campaign.as_deref())?;
            let instance = c.instance().map_err(|e| Error::Config(format!("campaign `{}`: {e}", c.name)))?;
            let cfg = SolverConfig { mode: c.mode, ..SolverConfig::default() };
            print_json(&solve_characteristic_time(&instance, &cfg)?)
        }
        Command::GraphInfo { config, campaign, matrix } => {
            let graph = match (config, matrix) {
                (_, Some(path)) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| Error::Config(format!("cannot read `{}`: {e}", path.display())))?;
                    FeedbackGraph::parse_text(&text).map_err(|e| Error::Config(e.to_string()))?
                }
                (Some(path), None) => {
                    let file = ExperimentFile::load(&path)?;
                    file.campaign(campaign.as_deref())?.graph().map_err(|e| Error::Config(e.to_string()))?
                }
                (None, None) => unreachable!("clap requires one of --config and --matrix"),
            };
            graph_info(&graph)
        }
        Command::Run { config, out, workers, format } => {
            run(&config, &out, workers.filter(|&n| n > 0).unwrap_or_else(default_workers), format)
        }
        Command::Summarize { csv, format } => summarize_csv(&csv, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
