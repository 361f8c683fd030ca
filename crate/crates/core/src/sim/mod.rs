//! One interaction round: edge activations, rewards and what the learner sees.

use serde::Serialize;

use crate::model::{FeedbackMode, Instance, RewardFamily};
use crate::rng::{RngStream, StreamId, StreamPurpose};

/// What the learner receives after selecting `chosen`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub chosen: usize,
    /// `z[u]` is the reward of `u` if the edge `(chosen, u)` fired, `0` otherwise.
    pub z: Vec<f64>,
    /// Fired edges' heads, revealed only in informed mode.
    pub activated: Option<Vec<usize>>,
}

/// Draws are addressed by `(round, vertex)`, so a reward that is never
/// needed is never drawn and leaves every other draw unchanged.
#[derive(Debug, Clone)]
pub struct Environment<'a> {
    instance: &'a Instance,
    mode: FeedbackMode,
    activations: RngStream,
    rewards: RngStream,
    round: u64,
    noise_scale: f64,
}

impl<'a> Environment<'a> {
    pub fn new(instance: &'a Instance, mode: FeedbackMode, seed: u64, run: u64) -> Self {
        Self {
            instance,
            mode,
            activations: RngStream::new(seed, StreamId { run, purpose: StreamPurpose::Activations }),
            rewards: RngStream::new(seed, StreamId { run, purpose: StreamPurpose::Rewards }),
            round: 0,
            noise_scale: 1.0,
        }
    }

    /// Scales Gaussian noise; `0.0` makes every reward equal its mean.
    pub fn with_noise_scale(mut self, scale: f64) -> Self {
        self.noise_scale = scale;
        self
    }

    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn step(&mut self, v: usize) -> Observation {
        let obs = step(
            self.instance,
            v,
            self.mode,
            self.round,
            &self.activations,
            &self.rewards,
            self.noise_scale,
        );
        self.round += 1;
        obs
    }
}

/// Simulates round `round` with vertex `v` selected.
pub fn step(
    instance: &Instance,
    v: usize,
    mode: FeedbackMode,
    round: u64,
    activations: &RngStream,
    rewards: &RngStream,
    noise_scale: f64,
) -> Observation {
    let k = instance.k();
    let g = instance.graph();
    let mut z = vec![0.0; k];
    let mut fired = Vec::new();
    for (u, zu) in z.iter_mut().enumerate() {
        let counter = round * k as u64 + u as u64;
        let w = g.weight(v, u);
        if w > 0.0 && activations.uniform_at(counter) < w {
            fired.push(u);
            let mu = instance.means()[u];
            *zu = match instance.family() {
                RewardFamily::Gaussian { variance } => {
                    mu + noise_scale * variance.sqrt() * rewards.normal_at(counter)
                }
                RewardFamily::Bernoulli => {
                    if rewards.uniform_at(counter) < mu {
                        1.0
                    } else {
                        0.0
                    }
                }
            };
        }
    }
    Observation {
        chosen: v,
        z,
        activated: (mode == FeedbackMode::Informed).then_some(fired),
    }
}
