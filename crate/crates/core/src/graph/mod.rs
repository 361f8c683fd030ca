//! Feedback graphs.
//!
//! A feedback graph on `K` vertices is a `K x K` matrix of edge-activation
//! probabilities: `G[u][v]` is the probability that selecting `u` reveals a
//! reward sample of `v`. Vertices are indexed from `0`.
//!
//! The edge set `{(u, v) : G[u][v] > 0}` is always derived from the weights.

mod families;
mod observability;
mod quantities;

pub use families::{generate_graph, GraphFamily, GraphParams};
pub use observability::{classify_observability, Observability, ObservabilityReport};
pub use quantities::{
    graph_quantities, min_dominating_set_of, so_domination_bound, GraphQuantities,
    MAX_EXACT_VERTICES,
};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Directed graph with edge-activation probabilities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct FeedbackGraph {
    k: usize,
    weights: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    k: usize,
    weights: Vec<Vec<f64>>,
}

impl TryFrom<GraphRepr> for FeedbackGraph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Self> {
        if repr.weights.len() != repr.k {
            return Err(Error::InvalidGraph(format!(
                "expected {} rows, found {}",
                repr.k,
                repr.weights.len()
            )));
        }
        Self::from_rows(&repr.weights)
    }
}

impl From<FeedbackGraph> for GraphRepr {
    fn from(g: FeedbackGraph) -> Self {
        GraphRepr {
            k: g.k,
            weights: g.rows().map(<[f64]>::to_vec).collect(),
        }
    }
}

impl FeedbackGraph {
    /// Builds a graph from a row-major `k * k` weight vector.
    pub fn new(k: usize, weights: Vec<f64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        if weights.len() != k * k {
            return Err(Error::InvalidGraph(format!(
                "expected {} weights for k = {k}, found {}",
                k * k,
                weights.len()
            )));
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidGraph(format!(
                    "weight G[{}][{}] = {w} is outside [0, 1]",
                    i / k,
                    i % k
                )));
            }
        }
        Ok(Self { k, weights })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        let mut weights = Vec::with_capacity(k * k);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidGraph(format!(
                    "row {u} has {} entries, expected {k}",
                    row.len()
                )));
            }
            weights.extend_from_slice(row);
        }
        Self::new(k, weights)
    }

    /// Bandit feedback: every vertex only observes itself.
    pub fn identity(k: usize) -> Self {
        let mut weights = vec![0.0; k * k];
        for u in 0..k {
            weights[u * k + u] = 1.0;
        }
        Self { k, weights }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weights[u * self.k + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[f64] {
        &self.weights[u * self.k..(u + 1) * self.k]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.weights.chunks_exact(self.k)
    }

    /// Row-major weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v) > 0.0
    }

    #[inline]
    pub fn has_self_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.k).flat_map(move |u| (0..self.k).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.k).filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn out_neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.k).filter(|&v| self.has_edge(u, v)).collect()
    }

    /// Vertices with a self-loop.
    pub fn self_loops(&self) -> Vec<usize> {
        (0..self.k).filter(|&v| self.has_self_loop(v)).collect()
    }

    /// Every vertex has at least one in-edge.
    pub fn is_observable(&self) -> bool {
        self.first_unobservable().is_none()
    }

    pub(crate) fn first_unobservable(&self) -> Option<usize> {
        (0..self.k).find(|&v| (0..self.k).all(|u| !self.has_edge(u, v)))
    }

    /// Observation rate `m = G^T omega`.
    pub fn observation_rate(&self, omega: &[f64]) -> Vec<f64> {
        let mut m = vec![0.0; self.k];
        self.observation_rate_into(omega, &mut m);
        m
    }

    pub(crate) fn observation_rate_into(&self, omega: &[f64], m: &mut [f64]) {
        debug_assert_eq!(omega.len(), self.k);
        m.iter_mut().for_each(|x| *x = 0.0);
        for (row, &w) in self.rows().zip(omega) {
            if w == 0.0 {
                continue;
            }
            for (mu, &g) in m.iter_mut().zip(row) {
                *mu += w * g;
            }
        }
    }

    /// `G x` for a vector indexed by vertices.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.rows()
            .map(|row| row.iter().zip(x).map(|(g, x)| g * x).sum())
            .collect()
    }

    /// `true` when every vertex of `target` is an out-neighbor of some vertex of `set`.
    pub fn dominates(&self, set: &[usize], target: &[usize]) -> bool {
        target
            .iter()
            .all(|&w| set.iter().any(|&d| self.has_edge(d, w)))
    }

    /// Out-neighborhood as a bitmask. Only valid for `k <= 64`.
    pub(crate) fn out_mask(&self, u: usize) -> u64 {
        debug_assert!(self.k <= 64);
        self.row(u)
            .iter()
            .enumerate()
            .filter(|(_, &g)| g > 0.0)
            .fold(0u64, |acc, (v, _)| acc | (1u64 << v))
    }

    /// Plain-text matrix format: first line `K`, then `K` rows of
    /// space-separated weights.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.k);
        for row in self.rows() {
            let line = row.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ");
            let _ = writeln!(out, "{line}");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::InvalidGraph("empty matrix file".into()))?;
        let k: usize = header.parse().map_err(|_| {
            Error::InvalidGraph(format!("line {line_no}: expected vertex count, found `{header}`"))
        })?;
        let mut rows = Vec::with_capacity(k);
        for (line_no, line) in lines {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| {
                        Error::InvalidGraph(format!("line {line_no}: cannot parse weight `{tok}`"))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        if rows.len() != k {
            return Err(Error::InvalidGraph(format!(
                "header declares {k} rows, found {}",
                rows.len()
            )));
        }
        Self::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_weights() {
        assert!(FeedbackGraph::new(2, vec![1.0, 0.0, 1.5, 1.0]).is_err());
        assert!(FeedbackGraph::new(2, vec![1.0, 0.0, f64::NAN, 1.0]).is_err());
        assert!(FeedbackGraph::new(2, vec![1.0, 0.0, 0.0]).is_err());
        assert!(FeedbackGraph::new(0, vec![]).is_err());
    }

    #[test]
    fn neighborhoods_follow_weights() {
        let g = FeedbackGraph::from_rows(&[
            vec![0.5, 1.0, 0.0],
            vec![0.0, 0.0, 0.2],
            vec![0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(g.out_neighbors(0), vec![0, 1]);
        assert_eq!(g.in_neighbors(2), vec![1]);
        assert_eq!(g.self_loops(), vec![0]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 2)]);
        assert!(g.is_observable());
        assert_eq!(g.out_mask(0), 0b011);
    }

    #[test]
    fn observation_rate_is_transpose_product() {
        let g = FeedbackGraph::from_rows(&[vec![0.5, 1.0], vec![0.25, 0.0]]).unwrap();
        let m = g.observation_rate(&[0.5, 0.5]);
        assert_eq!(m, vec![0.375, 0.5]);
        assert_eq!(g.apply(&[1.0, 2.0]), vec![2.5, 0.25]);
    }

    #[test]
    fn text_format_round_trips() {
        let g = FeedbackGraph::from_rows(&[vec![0.3, 0.7], vec![0.125, 1.0]]).unwrap();
        let text = g.to_text();
        assert!(text.starts_with("2\n0.3 0.7\n"));
        assert_eq!(FeedbackGraph::parse_text(&text).unwrap(), g);
    }

    #[test]
    fn text_format_reports_bad_lines() {
        let err = FeedbackGraph::parse_text("2\n0.1 x\n0 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(FeedbackGraph::parse_text("3\n1 0 0\n").is_err());
    }

    #[test]
    fn json_uses_nested_rows() {
        let g = FeedbackGraph::identity(2);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"k":2,"weights":[[1.0,0.0],[0.0,1.0]]}"#);
        let back: FeedbackGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }
}
