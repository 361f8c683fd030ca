use serde::{Deserialize, Serialize};

use super::campaign::CsvRow;
use crate::algorithms::{AlgorithmId, ThresholdKind};

/// Location statistics. Quantiles interpolate linearly between order statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
    pub min: f64,
    pub max: f64,
}

/// Quantile `q` of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

impl Stats {
    pub fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let (q1, q3) = (quantile(&v, 0.25), quantile(&v, 0.75));
        Some(Stats {
            mean: v.iter().sum::<f64>() / v.len() as f64,
            median: quantile(&v, 0.5),
            q1,
            q3,
            iqr: q3 - q1,
            min: v[0],
            max: v[v.len() - 1],
        })
    }
}

/// Aggregates for one (algorithm, delta, threshold) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub algorithm: AlgorithmId,
    pub delta: f64,
    pub threshold_kind: ThresholdKind,
    pub count: usize,
    pub errors: usize,
    pub error_rate: f64,
    pub truncated: usize,
    pub t_star: f64,
    pub tau: Stats,
    pub normalized: Stats,
}

/// Groups rows into cells in order of first appearance.
pub fn summarize(rows: &[CsvRow]) -> Vec<CellSummary> {
    let mut keys: Vec<(AlgorithmId, f64, ThresholdKind)> = Vec::new();
    for r in rows {
        let key = (r.algorithm, r.delta, r.threshold_kind);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(algorithm, delta, threshold_kind)| {
            let cell: Vec<&CsvRow> = rows
                .iter()
                .filter(|r| r.algorithm == algorithm && r.delta == delta && r.threshold_kind == threshold_kind)
                .collect();
            let taus: Vec<f64> = cell.iter().map(|r| r.tau as f64).collect();
            let normalized: Vec<f64> = cell.iter().map(|r| r.normalized).collect();
            let errors = cell.iter().filter(|r| !r.correct).count();
            CellSummary {
                algorithm,
                delta,
                threshold_kind,
                count: cell.len(),
                errors,
                error_rate: errors as f64 / cell.len() as f64,
                truncated: cell.iter().filter(|r| r.truncated).count(),
                t_star: cell[0].t_star,
                tau: Stats::of(&taus).unwrap(),
                normalized: Stats::of(&normalized).unwrap(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles_interpolate() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&v, 0.5), 2.5);
        assert_eq!(quantile(&v, 0.25), 1.75);
        assert_eq!(quantile(&v, 0.75), 3.25);
        let s = Stats::of(&[3.0, 1.0, 2.0]).unwrap();
        assert_eq!((s.median, s.mean, s.iqr, s.min, s.max), (2.0, 2.0, 1.0, 1.0, 3.0));
        assert!(Stats::of(&[]).is_none());
    }

    #[test]
    fn cells_follow_first_appearance() {
        let row = |algorithm, seed, tau, correct| CsvRow {
            seed,
            algorithm,
            delta: 0.1,
            tau,
            correct,
            a_hat: 0,
            t_star: 2.0,
            normalized: tau as f64 / 2.0,
            threshold_kind: ThresholdKind::Practical,
            truncated: false,
        };
        let rows = [
            row(AlgorithmId::Exp3G, 0, 10, true),
            row(AlgorithmId::TasFg, 0, 4, false),
            row(AlgorithmId::Exp3G, 1, 20, true),
        ];
        let cells = summarize(&rows);
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].algorithm, AlgorithmId::Exp3G);
        assert_eq!(cells[0].tau.median, 15.0);
        assert_eq!(cells[1].error_rate, 1.0);
    }
}
