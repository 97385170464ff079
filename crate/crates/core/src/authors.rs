//! Author scores derived from paper scores.
//!
//! An author's individual score (IA) is the mean of their papers' nonzero
//! ALEF scores. A paper's author score (PA) is the mean of the defined IA
//! values of its authors. Undefined values stay `None` so that blending can
//! tell "no author signal" apart from a zero score.

use crate::corpus::AuthorshipMap;
use crate::error::{Error, Result};
use crate::scores::ScoreVector;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AuthorScoreTable {
    /// Per author, indexed by `AuthorId`.
    pub ia: Vec<Option<f64>>,
    /// Per paper, indexed by `NodeId`.
    pub pa: Vec<Option<f64>>,
}

impl AuthorScoreTable {
    /// Table with no author signal for `paper_count` papers.
    pub fn empty(paper_count: usize) -> Self {
        AuthorScoreTable {
            ia: Vec::new(),
            pa: vec![None; paper_count],
        }
    }

    pub fn pa_defined(&self) -> usize {
        self.pa.iter().filter(|p| p.is_some()).count()
    }
}

fn mean_of_positive(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values
        .filter(|&v| v > 0.0)
        .fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

fn check_len(alef: &ScoreVector, authorship: &AuthorshipMap) -> Result<()> {
    if alef.len() != authorship.paper_count() {
        return Err(Error::LengthMismatch {
            expected: authorship.paper_count(),
            actual: alef.len(),
        });
    }
    Ok(())
}

/// IA for every author; `None` when none of their papers scored above zero.
pub fn individual_author_scores(alef: &ScoreVector, authorship: &AuthorshipMap) -> Result<Vec<Option<f64>>> {
    check_len(alef, authorship)?;
    Ok(authorship
        .author_ids()
        .map(|a| mean_of_positive(authorship.papers_of(a).iter().map(|&p| alef.get(p))))
        .collect())
}

/// PA for every paper; `None` when no author has a defined IA.
pub fn paper_author_scores(ia: &[Option<f64>], authorship: &AuthorshipMap) -> Vec<Option<f64>> {
    (0..authorship.paper_count())
        .map(|p| {
            let authors = authorship.authors_of(crate::corpus::NodeId::new(p));
            mean_of_positive(authors.iter().filter_map(|a| ia[a.index()]))
        })
        .collect()
}

/// Both stages in one go.
pub fn author_scores(alef: &ScoreVector, authorship: &AuthorshipMap) -> Result<AuthorScoreTable> {
    let ia = individual_author_scores(alef, authorship)?;
    let pa = paper_author_scores(&ia, authorship);
    Ok(AuthorScoreTable { ia, pa })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CitationGraph;

    fn close(a: Option<f64>, b: f64) -> bool {
        a.is_some_and(|a| (a - b).abs() < 1e-15)
    }

    #[test]
    fn ia_is_mean_of_nonzero_scores() {
        // Papers A, B, C carry the triangle ALEF scores; D is uncited.
        let mut g = CitationGraph::from_pairs(&[("A", "B"), ("C", "B"), ("C", "A")]);
        let map = AuthorshipMap::from_pairs(
            &mut g,
            &[("A", "X"), ("B", "X"), ("B", "Y"), ("E", "Y"), ("E", "W"), ("D", "X")],
        );
        let alef = ScoreVector::new(vec![0.3, 0.5, 0.2, 0.0, 0.0]);
        let t = author_scores(&alef, &map).unwrap();
        let x = map.author_id("X").unwrap().index();
        let y = map.author_id("Y").unwrap().index();
        let w = map.author_id("W").unwrap().index();
        assert!(close(t.ia[x], 0.4));
        assert!(close(t.ia[y], 0.5));
        assert_eq!(t.ia[w], None);

        let b = g.node_id("B").unwrap().index();
        let d = g.node_id("D").unwrap().index();
        let e = g.node_id("E").unwrap().index();
        let c = g.node_id("C").unwrap().index();
        assert!(close(t.pa[b], 0.45));
        assert!(close(t.pa[d], 0.4));
        assert!(close(t.pa[e], 0.5));
        assert_eq!(t.pa[c], None);
    }

    #[test]
    fn pa_averages_defined_ia() {
        let mut g = CitationGraph::default();
        let map = AuthorshipMap::from_pairs(&mut g, &[("B", "X"), ("B", "Y"), ("Q", "Z")]);
        let ia = vec![Some(0.4), Some(0.35), None];
        let pa = paper_author_scores(&ia, &map);
        assert!(close(pa[0], 0.375));
        assert_eq!(pa[1], None);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let mut g = CitationGraph::from_pairs(&[("A", "B")]);
        let map = AuthorshipMap::from_pairs(&mut g, &[("A", "X")]);
        let err = individual_author_scores(&ScoreVector::zeros(5), &map).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { expected: 2, actual: 5 }));
    }
}
