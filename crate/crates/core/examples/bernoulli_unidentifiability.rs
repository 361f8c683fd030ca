//! With Bernoulli rewards and hidden activations, a zero reward cannot be told
//! apart from an edge that did not fire. Raising a mean while lowering its
//! incoming edge weights leaves the observation law unchanged.
//!
//! cargo run --example bernoulli_unidentifiability

use fg_explore::graph::{generate_graph, GraphFamily, GraphParams};
use fg_explore::model::{FeedbackMode, Instance, RewardFamily};
use fg_explore::solver::{bernoulli_confusion, solve_characteristic_time, SolverConfig};

fn main() -> fg_explore::Result<()> {
    let g = generate_graph(GraphFamily::LoopyStar, 4, &GraphParams::pqr(0.2, 0.5, 0.4))?;
    let instance = Instance::new(g, RewardFamily::Bernoulli, vec![0.3, 0.5, 0.4, 0.8])?;

    for target in [0, 1, 2] {
        let cert = bernoulli_confusion(&instance, target)?;
        println!("target {target}: means {:?}, divergence {:.3e}", cert.confusing.means(), cert.divergence);
        for (u, row) in cert.confusing.graph().rows().enumerate() {
            println!("  G'[{u}] = {row:?}");
        }
    }

    match solve_characteristic_time(&instance, &SolverConfig::default()) {
        Err(e) => println!("\nuninformed: {e}"),
        Ok(r) => println!("\nuninformed: T* = {}", r.t_star),
    }
    let informed = SolverConfig { mode: FeedbackMode::Informed, ..SolverConfig::default() };
    println!("informed: T* = {:.3}", solve_characteristic_time(&instance, &informed)?.t_star);
    Ok(())
}
