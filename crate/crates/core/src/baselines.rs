//! Citation-count baseline.

use crate::corpus::{CitationGraph, NodeId};
use crate::par;
use crate::scores::ScoreVector;

/// `in_degree(i) / |E|`; all zeros for a graph without edges.
pub fn in_degree_rank(graph: &CitationGraph) -> ScoreVector {
    let mut scores = vec![0.0; graph.node_count()];
    let edges = graph.edge_count();
    if edges > 0 {
        let total = edges as f64;
        par::fill_indexed(&mut scores, |i| graph.in_degree(NodeId::new(i)) as f64 / total);
    }
    ScoreVector::new(scores)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = CitationGraph::from_pairs(&[("A", "B"), ("C", "B"), ("C", "A")]);
        let s = in_degree_rank(&g);
        assert_eq!(s.as_slice(), &[1.0 / 3.0, 2.0 / 3.0, 0.0]);
        assert!((s.coverage() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn empty_graph() {
        assert!(in_degree_rank(&CitationGraph::default()).is_empty());
    }

    #[test]
    fn star_of_citing_leaves() {
        let pairs: Vec<(String, String)> = (1..=5).map(|i| (i.to_string(), "hub".to_string())).collect();
        let g = CitationGraph::from_pairs(&pairs);
        let s = in_degree_rank(&g);
        let hub = g.node_id("hub").unwrap();
        assert_eq!(s.get(hub), 1.0);
        assert_eq!(s.sum(), 1.0);
        assert!((s.coverage() - 1.0 / 6.0).abs() < 1e-15);
    }
}
