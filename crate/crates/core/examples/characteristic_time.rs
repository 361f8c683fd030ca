//! Characteristic time and optimal allocation.
//!
//! On the three-vertex symmetric instance the optimum is flat: every mix of
//! the two outer vertices reaches the same value.
//!
//! cargo run --release --example characteristic_time

use fg_explore::graph::{generate_graph, FeedbackGraph, GraphFamily, GraphParams};
use fg_explore::model::{Instance, RewardFamily};
use fg_explore::solver::{inverse_time, solve_characteristic_time, Allocation, SolverConfig};

fn main() -> fg_explore::Result<()> {
    let g = FeedbackGraph::from_rows(&[vec![0.5, 1.0, 0.5], vec![0.0; 3], vec![0.5, 1.0, 0.5]])?;
    let symmetric = Instance::new(g, RewardFamily::gaussian(1.0)?, vec![0.0, 1.0, 0.0])?;
    let result = solve_characteristic_time(&symmetric, &SolverConfig::default())?;
    println!("symmetric: T* = {:.6}, omega* = {:?}", result.t_star, result.omega_star.as_slice());
    for i in 0..=10 {
        let x = i as f64 / 10.0;
        let omega = Allocation::new(vec![x, 0.0, 1.0 - x])?;
        println!("  omega = ({x:.1}, 0, {:.1})  T = {:.9}", 1.0 - x, 1.0 / inverse_time(&symmetric, &omega)?);
    }

    let ring = generate_graph(GraphFamily::Ring, 5, &GraphParams::with_p(0.3))?;
    let means = vec![0.0, 0.25, 0.5, 0.75, 1.0];
    let instance = Instance::new(ring, RewardFamily::gaussian(1.0)?, means)?;
    let result = solve_characteristic_time(&instance, &SolverConfig::default())?;
    println!("\nring: T* = {:.4} (gap estimate {:.2e})", result.t_star, result.gap_estimate);
    let omega: Vec<String> = result.omega_star.as_slice().iter().map(|w| format!("{w:.3}")).collect();
    println!("  omega* = [{}]", omega.join(", "));
    println!("  per-alternative values = {:?}", result.per_alt_values);
    Ok(())
}
