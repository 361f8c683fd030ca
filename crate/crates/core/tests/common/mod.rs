//! Reference implementations used as test oracles. They deliberately avoid the
//! library's own numerics: everything is recomputed from raw weights.

#![allow(dead_code)]

use fg_explore::graph::FeedbackGraph;
use fg_explore::model::{Instance, RewardFamily};

/// Small deterministic generator for test fixtures.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut z = self.0;
        z = (z ^ (z >> 33)).wrapping_mul(0xff51afd7ed558ccd);
        z ^ (z >> 33)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Inverse characteristic time of a Gaussian instance in closed form: the
/// hardest alternative moves one suboptimal mean and the best mean to their
/// rate-weighted midpoint.
pub fn gaussian_inverse_time(rows: &[Vec<f64>], means: &[f64], variance: f64, omega: &[f64]) -> f64 {
    let k = means.len();
    let m: Vec<f64> = (0..k).map(|v| (0..k).map(|u| omega[u] * rows[u][v]).sum()).collect();
    let best = (0..k).max_by(|&a, &b| means[a].total_cmp(&means[b])).unwrap();
    (0..k)
        .filter(|&a| a != best)
        .map(|a| {
            if m[a] == 0.0 || m[best] == 0.0 {
                return 0.0;
            }
            let gap = means[best] - means[a];
            m[a] * m[best] / (m[a] + m[best]) * gap * gap / (2.0 * variance)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Characteristic time by exhaustive search over the simplex grid with the
/// given number of steps per unit.
pub fn grid_characteristic_time(instance: &Instance, steps: usize) -> f64 {
    let variance = match instance.family() {
        RewardFamily::Gaussian { variance } => variance,
        RewardFamily::Bernoulli => panic!("grid oracle is Gaussian only"),
    };
    let rows: Vec<Vec<f64>> = instance.graph().rows().map(<[f64]>::to_vec).collect();
    let k = instance.k();
    let mut best = 0.0f64;
    let mut counts = vec![0usize; k];
    fn walk(i: usize, left: usize, counts: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        if i + 1 == counts.len() {
            counts[i] = left;
            visit(counts);
            return;
        }
        for c in 0..=left {
            counts[i] = c;
            walk(i + 1, left - c, counts, visit);
        }
    }
    walk(0, steps, &mut counts, &mut |c| {
        let omega: Vec<f64> = c.iter().map(|&n| n as f64 / steps as f64).collect();
        best = best.max(gaussian_inverse_time(&rows, instance.means(), variance, &omega));
    });
    1.0 / best
}

fn has_edge(g: &FeedbackGraph, u: usize, v: usize) -> bool {
    g.weight(u, v) > 0.0
}

/// Independence number by enumerating all subsets.
pub fn brute_alpha(g: &FeedbackGraph) -> usize {
    let k = g.k();
    (0u32..1 << k)
        .filter(|&s| {
            (0..k).all(|u| {
                (0..k).all(|v| u == v || s >> u & 1 == 0 || s >> v & 1 == 0 || !(has_edge(g, u, v) || has_edge(g, v, u)))
            })
        })
        .map(u32::count_ones)
        .max()
        .unwrap() as usize
}

/// Smallest subset whose out-neighborhoods cover `target`, by enumeration.
pub fn brute_domination(g: &FeedbackGraph, target: &[usize]) -> Option<usize> {
    let k = g.k();
    (0u32..1 << k)
        .filter(|&s| target.iter().all(|&w| (0..k).any(|d| s >> d & 1 == 1 && has_edge(g, d, w))))
        .map(|s| s.count_ones() as usize)
        .min()
}

/// Strongly observable vertices: self-loop, or seen by all other vertices.
pub fn strongly_observable(g: &FeedbackGraph) -> Vec<usize> {
    let k = g.k();
    (0..k)
        .filter(|&v| has_edge(g, v, v) || (0..k).all(|u| u == v || has_edge(g, u, v)))
        .collect()
}

/// Random graph whose edges exist with probability `density`, weights uniform in (0, 1].
pub fn random_graph(rng: &mut Lcg, k: usize, density: f64, loop_density: f64) -> FeedbackGraph {
    let mut w = vec![0.0; k * k];
    for u in 0..k {
        for v in 0..k {
            let p = if u == v { loop_density } else { density };
            if rng.uniform() < p {
                w[u * k + v] = 1.0 - rng.uniform();
            }
        }
    }
    FeedbackGraph::new(k, w).unwrap()
}

/// Random strongly observable graph: every vertex failing the condition gets
/// either a self-loop or an edge from every other vertex.
pub fn random_strongly_observable(rng: &mut Lcg, k: usize) -> FeedbackGraph {
    let density = 0.15 + 0.5 * rng.uniform();
    let loop_density = [0.0, 0.3, 0.7][rng.below(3)];
    let g = random_graph(rng, k, density, loop_density);
    let mut w = g.weights().to_vec();
    let so = strongly_observable(&g);
    for v in (0..k).filter(|v| !so.contains(v)) {
        if loop_density > 0.0 && rng.uniform() < 0.5 {
            w[v * k + v] = 0.5;
        } else {
            for u in (0..k).filter(|&u| u != v) {
                if w[u * k + v] == 0.0 {
                    w[u * k + v] = 0.5;
                }
            }
        }
    }
    FeedbackGraph::new(k, w).unwrap()
}

/// Random observable Gaussian instance with a unique best vertex.
pub fn random_gaussian_instance(rng: &mut Lcg, k: usize) -> Instance {
    loop {
        let g = random_graph(rng, k, 0.6, 0.6);
        if !g.is_observable() {
            continue;
        }
        let means: Vec<f64> = (0..k).map(|_| rng.uniform()).collect();
        let inst = Instance::new(g, RewardFamily::Gaussian { variance: 1.0 }, means).unwrap();
        if inst.check_identifiable().is_ok() {
            return inst;
        }
    }
}
