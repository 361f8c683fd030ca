//! Closed-form upper bounds on the characteristic time next to the exact value.
//!
//! cargo run --release --example scaling_bounds

use fg_explore::graph::{generate_graph, GraphFamily, GraphParams};
use fg_explore::model::{Instance, RewardFamily};
use fg_explore::solver::{
    heuristic_allocation, heuristic_bound, inverse_time, scaling_bound, solve_characteristic_time, sparse_allocation,
    SolverConfig,
};

fn main() -> fg_explore::Result<()> {
    println!("{:>2} {:>10} {:>10} {:>12} {:>10} {:>12}", "K", "T*", "T(heur)", "heur bound", "T(top-2)", "scaling");
    for k in 4..=6 {
        let g = generate_graph(GraphFamily::LooplessClique, k, &GraphParams::with_p(0.5))?;
        let means: Vec<f64> = (0..k).map(|u| u as f64 / (k - 1) as f64).collect();
        let instance = Instance::new(g, RewardFamily::gaussian(1.0)?, means)?;
        let t_star = solve_characteristic_time(&instance, &SolverConfig::default())?.t_star;
        let heur = 1.0 / inverse_time(&instance, &heuristic_allocation(&instance)?)?;
        let top2 = match sparse_allocation(&instance, 2)? {
            Some(omega) => format!("{:.3}", 1.0 / inverse_time(&instance, &omega)?),
            None => "-".into(),
        };
        let scaling = scaling_bound(&instance).map_or_else(|e| format!("({e})"), |b| format!("{b:.3}"));
        println!(
            "{k:>2} {t_star:>10.3} {heur:>10.3} {:>12.3} {top2:>10} {scaling:>12}",
            heuristic_bound(&instance)?
        );
    }
    Ok(())
}
