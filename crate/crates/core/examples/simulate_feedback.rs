//! Drives the environment directly and compares empirical activation
//! frequencies with the graph weights.
//!
//! cargo run --release --example simulate_feedback [rounds]

use fg_explore::graph::{generate_graph, GraphFamily, GraphParams};
use fg_explore::model::{FeedbackMode, Instance, RewardFamily};
use fg_explore::sim::Environment;

fn main() -> fg_explore::Result<()> {
    let rounds: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let g = generate_graph(GraphFamily::LoopyStar, 5, &GraphParams::pqr(0.2, 0.25, 0.25))?;
    let instance = Instance::new(g, RewardFamily::gaussian(1.0)?, vec![0.5, 0.5, 0.5, 0.5, 1.0])?;

    let mut env = Environment::new(&instance, FeedbackMode::Informed, 7, 0);
    let mut fired = [0u64; 5];
    for _ in 0..rounds {
        let obs = env.step(0);
        for &v in obs.activated.as_deref().unwrap_or(&[]) {
            fired[v] += 1;
        }
    }
    println!("hub pulled {rounds} times");
    for (v, &n) in fired.iter().enumerate() {
        println!("  edge 0 -> {v}: weight {:.2}, frequency {:.4}", instance.graph().weight(0, v), n as f64 / rounds as f64);
    }

    // Without activation flags the learner only sees the reward vector.
    let mut env = Environment::new(&instance, FeedbackMode::Uninformed, 7, 0);
    let obs = env.step(4);
    println!("\nuninformed pull of vertex 4: z = {:?}, activated = {:?}", obs.z, obs.activated);
    Ok(())
}
