//! A single track-and-stop run on the loopy star.
//!
//! cargo run --release --example track_and_stop [seed]

use fg_explore::algorithms::{run_algorithm, AlgorithmId, Problem, RunConfig, StoppingConfig, ThresholdKind};
use fg_explore::graph::{generate_graph, GraphFamily, GraphParams};
use fg_explore::model::{FeedbackMode, Instance, RewardFamily};

fn main() -> fg_explore::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(0);
    let g = generate_graph(GraphFamily::LoopyStar, 5, &GraphParams::pqr(0.2, 0.25, 0.25))?;
    let instance = Instance::new(g, RewardFamily::gaussian(1.0)?, vec![0.5, 0.5, 0.5, 0.5, 1.0])?;
    let problem = Problem::new(instance, FeedbackMode::Uninformed)?;
    let cfg = RunConfig::new(StoppingConfig::new(ThresholdKind::Practical, (-7f64).exp())?);

    for id in [AlgorithmId::TasFg, AlgorithmId::TasFgHeur] {
        let r = run_algorithm(&problem, id, &cfg, seed);
        println!("{id}: stopped at {} recommending {} ({})", r.tau, r.a_hat, if r.correct { "correct" } else { "wrong" });
        println!("  statistic {:.3} >= threshold {:.3}", r.statistic_at_tau, r.threshold_at_tau);
        println!("  tau / (T* kl) = {:.3} with T* = {:.3}", r.normalized, r.t_star);
        let shares: Vec<String> = r.n_pulls.iter().map(|&n| format!("{:.3}", n as f64 / r.tau as f64)).collect();
        println!("  pull shares [{}]", shares.join(", "));
    }
    Ok(())
}
