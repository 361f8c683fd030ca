//! Observability classes and exact graph quantities for every built-in family.
//!
//! cargo run --example graph_observability

use fg_explore::graph::{
    classify_observability, generate_graph, graph_quantities, so_domination_bound, GraphFamily, GraphParams,
};

fn main() -> fg_explore::Result<()> {
    println!("{:<18} {:<20} {:>5} {:>5} {:>5}  {:<14} bound", "family", "class", "alpha", "delta", "sigma", "dominating");
    for family in GraphFamily::ALL {
        let (k, params) = match family {
            GraphFamily::AppleTasting => (2, GraphParams::default()),
            GraphFamily::LoopyStar => (5, GraphParams::pqr(0.2, 0.25, 0.25)),
            _ => (5, GraphParams::with_p(0.3)),
        };
        let g = generate_graph(family, k, &params)?;
        let report = classify_observability(&g);
        let q = graph_quantities(&g)?;
        // Only defined when some vertex is strongly observable.
        let bound = so_domination_bound(&g).map_or("-".to_string(), |b| b.to_string());
        println!(
            "{:<18} {:<20} {:>5} {:>5} {:>5}  {:<14} {bound}",
            family.name(),
            format!("{:?}", report.graph_class),
            q.alpha,
            q.delta,
            q.sigma,
            format!("{:?}", q.witness_dominating_set),
        );
    }

    let ring = generate_graph(GraphFamily::Ring, 5, &GraphParams::with_p(0.3))?;
    println!("\nring in text form:\n{}", ring.to_text());
    Ok(())
}
