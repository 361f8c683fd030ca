//! Plugging a user-defined sampling rule into the shared stopping rule.
//!
//! cargo run --release --example custom_sampling_rule

use fg_explore::algorithms::{
    run_with_rule, AlgorithmId, Problem, RoundContext, RunConfig, SamplingRule, StoppingConfig, ThresholdKind,
};
use fg_explore::graph::{generate_graph, GraphFamily, GraphParams};
use fg_explore::model::{FeedbackMode, Instance, RewardFamily};

/// Pulls the vertex whose reward has been seen least often.
struct LeastObserved;

impl SamplingRule for LeastObserved {
    fn select(&mut self, ctx: &RoundContext<'_>) -> usize {
        let m = ctx.est.m_obs();
        let target = (0..m.len()).min_by_key(|&u| m[u]).unwrap();
        // Pick the in-neighbor of the target with the largest edge weight.
        let g = ctx.problem.instance().graph();
        (0..g.k()).max_by(|&a, &b| g.weight(a, target).total_cmp(&g.weight(b, target)).then(b.cmp(&a))).unwrap()
    }
}

fn main() -> fg_explore::Result<()> {
    let g = generate_graph(GraphFamily::Ring, 5, &GraphParams::with_p(0.3))?;
    let instance = Instance::new(g, RewardFamily::gaussian(1.0)?, vec![0.0, 0.25, 0.5, 0.75, 1.0])?;
    let problem = Problem::new(instance, FeedbackMode::Informed)?;
    let cfg = RunConfig::new(StoppingConfig::new(ThresholdKind::Practical, 0.01)?);

    for seed in 0..5 {
        // The algorithm label only tags the record.
        let r = run_with_rule(&problem, &mut LeastObserved, AlgorithmId::Exp3G, &cfg, seed);
        println!("seed {seed}: tau {:>6}  recommended {}  normalized {:.3}", r.tau, r.a_hat, r.normalized);
    }
    Ok(())
}
