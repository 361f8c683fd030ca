//! Best-vertex identification in bandits with stochastic feedback graphs.

pub mod error;
pub mod graph;
pub mod model;
pub mod rng;
pub mod sim;
pub mod algorithms;
pub mod solver;
pub mod harness;

pub use error::{Error, Result};
