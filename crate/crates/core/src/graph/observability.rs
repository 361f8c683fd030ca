use serde::Serialize;

use super::FeedbackGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Observability {
    StronglyObservable,
    WeaklyObservable,
    NonObservable,
}

/// Per-vertex and graph-level observability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObservabilityReport {
    pub vertex_classes: Vec<Observability>,
    pub strongly_observable: Vec<usize>,
    pub weakly_observable: Vec<usize>,
    pub non_observable: Vec<usize>,
    /// Vertices with a self-loop.
    pub self_loops: Vec<usize>,
    pub graph_class: Observability,
}

impl ObservabilityReport {
    pub fn is_observable(&self) -> bool {
        self.graph_class != Observability::NonObservable
    }
}

/// A vertex is strongly observable when it sees itself or is seen by every
/// other vertex, and weakly observable when it has some in-edge but is not
/// strongly observable. A vertex with no in-edge is non-observable, which
/// settles the degenerate single-vertex graph without a self-loop.
pub fn classify_observability(g: &FeedbackGraph) -> ObservabilityReport {
    let k = g.k();
    let mut vertex_classes = Vec::with_capacity(k);
    for v in 0..k {
        let seen_by: Vec<usize> = g.in_neighbors(v);
        let class = if seen_by.is_empty() {
            Observability::NonObservable
        } else if g.has_self_loop(v) || (0..k).filter(|&u| u != v).all(|u| g.has_edge(u, v)) {
            Observability::StronglyObservable
        } else {
            Observability::WeaklyObservable
        };
        vertex_classes.push(class);
    }
    let select = |c: Observability| -> Vec<usize> {
        (0..k).filter(|&v| vertex_classes[v] == c).collect()
    };
    let strongly_observable = select(Observability::StronglyObservable);
    let weakly_observable = select(Observability::WeaklyObservable);
    let non_observable = select(Observability::NonObservable);
    let graph_class = if !non_observable.is_empty() {
        Observability::NonObservable
    } else if weakly_observable.is_empty() {
        Observability::StronglyObservable
    } else {
        Observability::WeaklyObservable
    };
    ObservabilityReport {
        vertex_classes,
        strongly_observable,
        weakly_observable,
        non_observable,
        self_loops: g.self_loops(),
        graph_class,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphFamily, GraphParams};

    fn canonical(family: GraphFamily, k: usize) -> FeedbackGraph {
        let params = GraphParams { p: Some(0.3), q: None, r: None };
        generate_graph(family, k, &params).unwrap()
    }

    #[test]
    fn bandit_feedback_is_strongly_observable() {
        let r = classify_observability(&FeedbackGraph::identity(5));
        assert_eq!(r.graph_class, Observability::StronglyObservable);
        assert_eq!(r.strongly_observable, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn revealing_action_is_weakly_observable() {
        let r = classify_observability(&canonical(GraphFamily::RevealingAction, 5));
        assert_eq!(r.graph_class, Observability::WeaklyObservable);
        assert_eq!(r.strongly_observable, vec![0]);
        assert_eq!(r.weakly_observable, vec![1, 2, 3, 4]);
        assert_eq!(r.self_loops, vec![0]);
    }

    #[test]
    fn single_vertex_cases() {
        let looped = FeedbackGraph::from_rows(&[vec![1.0]]).unwrap();
        assert_eq!(classify_observability(&looped).graph_class, Observability::StronglyObservable);
        let blind = FeedbackGraph::from_rows(&[vec![0.0]]).unwrap();
        assert_eq!(classify_observability(&blind).graph_class, Observability::NonObservable);
    }

    #[test]
    fn canonical_classes() {
        use GraphFamily::*;
        let expect = [
            (AppleTasting, 2, Observability::StronglyObservable),
            (Ring, 5, Observability::WeaklyObservable),
            (LooplessClique, 5, Observability::StronglyObservable),
            (FullFeedback, 5, Observability::StronglyObservable),
            (LoopyStar, 5, Observability::StronglyObservable),
        ];
        for (family, k, class) in expect {
            let g = match family {
                LoopyStar => generate_graph(
                    family,
                    k,
                    &GraphParams { p: Some(0.2), q: Some(0.25), r: Some(0.25) },
                )
                .unwrap(),
                _ => canonical(family, k),
            };
            assert_eq!(classify_observability(&g).graph_class, class, "{family:?}");
        }
    }

    #[test]
    fn vertex_without_in_edges_makes_graph_non_observable() {
        let g = FeedbackGraph::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let r = classify_observability(&g);
        assert_eq!(r.non_observable, vec![1]);
        assert!(!r.is_observable());
    }
}
