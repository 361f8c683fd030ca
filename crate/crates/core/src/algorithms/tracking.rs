use serde::{Deserialize, Serialize};

/// How past allocations are averaged before tracking.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Smoothing {
    /// Plain running mean.
    #[default]
    Average,
    /// Weights proportional to `lambda^(t - n)`.
    Exponential { lambda: f64 },
}

/// Smoothed history of the allocations passed to [`TrackingState::fold`].
#[derive(Debug, Clone, PartialEq)]
pub struct TrackingState {
    smoothing: Smoothing,
    omega_sum: Vec<f64>,
    weight: f64,
}

impl TrackingState {
    pub fn new(k: usize, smoothing: Smoothing) -> Self {
        if let Smoothing::Exponential { lambda } = smoothing {
            assert!(lambda > 0.0 && lambda < 1.0, "smoothing factor must lie in (0, 1)");
        }
        Self { smoothing, omega_sum: vec![0.0; k], weight: 0.0 }
    }

    pub fn fold(&mut self, omega: &[f64]) {
        let decay = match self.smoothing {
            Smoothing::Average => 1.0,
            Smoothing::Exponential { lambda } => lambda,
        };
        for (s, &w) in self.omega_sum.iter_mut().zip(omega) {
            *s = decay * *s + w;
        }
        self.weight = decay * self.weight + 1.0;
    }

    /// Current smoothed allocation (uniform before the first fold).
    pub fn smoothed(&self) -> Vec<f64> {
        let k = self.omega_sum.len();
        if self.weight == 0.0 {
            return vec![1.0 / k as f64; k];
        }
        self.omega_sum.iter().map(|s| s / self.weight).collect()
    }

    /// D-tracking: pull the least-pulled vertex among those below
    /// `sqrt(t) - K/2`, otherwise the vertex furthest behind `t * smoothed`.
    pub fn select(&self, n_pulls: &[u64]) -> usize {
        let k = n_pulls.len();
        let t: u64 = n_pulls.iter().sum();
        let floor = (t as f64).sqrt() - k as f64 / 2.0;
        let starved = (0..k).filter(|&u| (n_pulls[u] as f64) < floor).min_by_key(|&u| (n_pulls[u], u));
        if let Some(u) = starved {
            return u;
        }
        let target = self.smoothed();
        let mut best = (f64::INFINITY, 0);
        for u in 0..k {
            let deficit = n_pulls[u] as f64 - t as f64 * target[u];
            if deficit < best.0 {
                best = (deficit, u);
            }
        }
        best.1
    }
}

/// Folds `omega` into `trk` and selects the next vertex.
pub fn select_vertex_dtracking(n_pulls: &[u64], trk: &mut TrackingState, omega: &[f64]) -> usize {
    trk.fold(omega);
    trk.select(n_pulls)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_choice_is_vertex_zero() {
        let mut trk = TrackingState::new(4, Smoothing::Average);
        assert_eq!(select_vertex_dtracking(&[0, 0, 0, 0], &mut trk, &[0.25; 4]), 0);
        assert_eq!(select_vertex_dtracking(&[3, 3, 3, 3], &mut trk, &[0.25; 4]), 0);
    }

    #[test]
    fn starved_vertex_is_forced() {
        let mut trk = TrackingState::new(3, Smoothing::Average);
        // t = 100, floor = 8.5.
        assert_eq!(select_vertex_dtracking(&[90, 2, 8], &mut trk, &[1.0, 0.0, 0.0]), 1);
    }

    #[test]
    fn exponential_weights_sum_to_one() {
        let mut trk = TrackingState::new(2, Smoothing::Exponential { lambda: 0.5 });
        trk.fold(&[1.0, 0.0]);
        trk.fold(&[0.0, 1.0]);
        // Weights (1 - l) / (1 - l^2) * (l, 1) = (1/3, 2/3).
        let s = trk.smoothed();
        assert!((s[0] - 1.0 / 3.0).abs() < 1e-15 && (s[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn tracks_fixed_allocation() {
        let omega = [0.5, 0.3, 0.15, 0.05, 0.0];
        let mut trk = TrackingState::new(5, Smoothing::Average);
        let mut n = [0u64; 5];
        for _ in 0..10_000 {
            let u = select_vertex_dtracking(&n, &mut trk, &omega);
            n[u] += 1;
        }
        let err = n.iter().zip(&omega).map(|(&c, &w)| (c as f64 / 1e4 - w).abs()).fold(0.0, f64::max);
        assert!(err <= 0.05, "{err}");
    }
}
