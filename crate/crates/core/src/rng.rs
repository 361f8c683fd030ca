//! Counter-based random streams.
//!
//! A draw is a pure function of `(seed, run, purpose, counter)`, so any draw
//! can be recomputed without replaying the ones before it. The mixing
//! function is the SplitMix64 finalizer; Gaussian draws use the `libm`
//! transcendental functions so the bits do not depend on the platform math
//! library.

use serde::{Deserialize, Serialize};

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// What a stream is used for; each purpose draws independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StreamPurpose {
    Activations,
    Rewards,
    Algorithm,
}

impl StreamPurpose {
    fn tag(self) -> u64 {
        match self {
            StreamPurpose::Activations => 1,
            StreamPurpose::Rewards => 2,
            StreamPurpose::Algorithm => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StreamId {
    pub run: u64,
    pub purpose: StreamPurpose,
}

/// Random stream keyed by a seed and a stream id.
///
/// Draws can be addressed by counter (`*_at`) or taken sequentially, which
/// advances an internal position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
    id: StreamId,
    key: u64,
    position: u64,
}

impl RngStream {
    pub fn new(seed: u64, id: StreamId) -> Self {
        let key = mix(mix(mix(seed ^ GOLDEN).wrapping_add(id.run)).wrapping_add(id.purpose.tag()));
        Self { seed, id, key, position: 0 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn id(&self) -> StreamId {
        self.id
    }

    #[inline]
    pub fn u64_at(&self, counter: u64) -> u64 {
        mix(self.key.wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn uniform_at(&self, counter: u64) -> f64 {
        (self.u64_at(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in the open interval `(0, 1)`.
    #[inline]
    fn open_uniform(&self, counter: u64) -> f64 {
        ((self.u64_at(counter) >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal by Box-Muller on the two words `2c` and `2c + 1`.
    pub fn normal_at(&self, counter: u64) -> f64 {
        let u1 = self.open_uniform(counter.wrapping_mul(2));
        let u2 = self.open_uniform(counter.wrapping_mul(2).wrapping_add(1));
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(std::f64::consts::TAU * u2)
    }

    pub fn next_u64(&mut self) -> u64 {
        let x = self.u64_at(self.position);
        self.position += 1;
        x
    }

    pub fn next_uniform(&mut self) -> f64 {
        let x = self.uniform_at(self.position);
        self.position += 1;
        x
    }

    pub fn next_normal(&mut self) -> f64 {
        let x = self.normal_at(self.position);
        self.position += 1;
        x
    }

    /// Index drawn from the (not necessarily normalized) weights `p`.
    pub fn next_categorical(&mut self, p: &[f64]) -> usize {
        let total: f64 = p.iter().sum();
        let target = self.next_uniform() * total;
        let mut acc = 0.0;
        for (i, &w) in p.iter().enumerate() {
            acc += w;
            if target < acc {
                return i;
            }
        }
        p.iter().rposition(|&w| w > 0.0).unwrap_or(p.len() - 1)
    }
}
