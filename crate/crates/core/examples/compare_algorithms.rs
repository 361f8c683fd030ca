//! Median normalized stopping time of every algorithm on the ring and the
//! loopy star.
//!
//! cargo run --release --example compare_algorithms [seeds]

use rayon::prelude::*;

use fg_explore::algorithms::{run_algorithm, AlgorithmId, Problem, RunConfig, StoppingConfig, ThresholdKind};
use fg_explore::graph::{generate_graph, GraphFamily, GraphParams};
use fg_explore::harness::Stats;
use fg_explore::model::{FeedbackMode, Instance, RewardFamily};

fn main() -> fg_explore::Result<()> {
    let seeds: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20);
    let unit = RewardFamily::gaussian(1.0)?;
    let star = generate_graph(GraphFamily::LoopyStar, 5, &GraphParams::pqr(0.2, 0.25, 0.25))?;
    let ring = generate_graph(GraphFamily::Ring, 5, &GraphParams::with_p(0.3))?;
    let problems = [
        ("loopy star", Instance::new(star, unit, vec![0.5, 0.5, 0.5, 0.5, 1.0])?),
        ("ring", Instance::new(ring, unit, vec![0.0, 0.25, 0.5, 0.75, 1.0])?),
    ];
    let cfg = RunConfig::new(StoppingConfig::new(ThresholdKind::Practical, (-7f64).exp())?);

    for (name, instance) in problems {
        let problem = Problem::new(instance, FeedbackMode::Uninformed)?;
        println!("{name} (T* = {:.3}, {seeds} seeds)", problem.t_star());
        for id in AlgorithmId::ALL {
            let records: Vec<_> = (0..seeds).into_par_iter().map(|s| run_algorithm(&problem, id, &cfg, s)).collect();
            let normalized: Vec<f64> = records.iter().map(|r| r.normalized).collect();
            let s = Stats::of(&normalized).expect("at least one seed");
            let errors = records.iter().filter(|r| !r.correct).count();
            println!("  {id:<12} median {:>7.3}  iqr [{:.3}, {:.3}]  errors {errors}", s.median, s.q1, s.q3);
        }
    }
    Ok(())
}
