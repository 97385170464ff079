//! Pairwise evaluation against expert judgments, plus coverage, uniqueness
//! and rank correlation between two score vectors.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::Serialize;

use crate::corpus::{read_pairs, LoadReport, NodeId, Strictness};
use crate::error::{Error, Result};

/// Ordered `(preferred, other)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JudgmentSet {
    pairs: Vec<(NodeId, NodeId)>,
    excluded: usize,
}

impl JudgmentSet {
    /// Drops pairs that compare a paper with itself and counts them as excluded.
    pub fn new(pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut set = JudgmentSet::default();
        for (p, o) in pairs {
            if p == o {
                set.excluded += 1;
            } else {
                set.pairs.push((p, o));
            }
        }
        set
    }

    pub fn pairs(&self) -> &[(NodeId, NodeId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs dropped because a paper was unknown or compared with itself.
    pub fn excluded(&self) -> usize {
        self.excluded
    }

    /// Every pair with its preference swapped.
    pub fn reversed(&self) -> JudgmentSet {
        JudgmentSet {
            pairs: self.pairs.iter().map(|&(p, o)| (o, p)).collect(),
            excluded: self.excluded,
        }
    }

    pub fn write<'a, W, F>(&self, mut out: W, label: F) -> std::io::Result<()>
    where
        W: Write,
        F: Fn(NodeId) -> &'a str,
    {
        for &(p, o) in &self.pairs {
            writeln!(out, "{}\t{}", label(p), label(o))?;
        }
        Ok(())
    }
}

/// Reads `preferred\tother` lines. Ids that `resolve` cannot map are
/// excluded and counted rather than treated as errors.
pub fn parse_judgments<R, F>(reader: R, resolve: F, strictness: Strictness) -> Result<(JudgmentSet, LoadReport)>
where
    R: BufRead,
    F: Fn(&str) -> Option<NodeId>,
{
    let mut report = LoadReport::default();
    let mut unresolved = 0;
    let mut pairs = Vec::new();
    read_pairs(reader, strictness, &mut report, |a, b| match (resolve(a), resolve(b)) {
        (Some(p), Some(o)) => pairs.push((p, o)),
        _ => unresolved += 1,
    })?;
    let mut set = JudgmentSet::new(pairs);
    set.excluded += unresolved;
    Ok((set, report))
}

pub fn load_judgments<F>(path: &Path, resolve: F, strictness: Strictness) -> Result<(JudgmentSet, LoadReport)>
where
    F: Fn(&str) -> Option<NodeId>,
{
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    parse_judgments(BufReader::new(file), resolve, strictness)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    /// `agree / (agree + disagree + tie)`.
    pub performance: f64,
    pub coverage: f64,
    pub uniqueness: f64,
    pub agree: usize,
    pub disagree: usize,
    /// Equal scores, including both zero. Counted as failures.
    pub tie: usize,
    pub excluded_pairs: usize,
}

impl EvalReport {
    pub fn total(&self) -> usize {
        self.agree + self.disagree + self.tie
    }

    /// `key: value` lines.
    pub fn to_text(&self) -> String {
        format!(
            "performance: {}\ncoverage: {}\nuniqueness: {}\nuniqueness_denominator: positively_scored\n\
             agree: {}\ndisagree: {}\ntie: {}\nexcluded_pairs: {}\n",
            self.performance,
            self.coverage,
            self.uniqueness,
            self.agree,
            self.disagree,
            self.tie,
            self.excluded_pairs
        )
    }
}

/// Fraction of judged pairs where the preferred paper scores strictly higher.
pub fn pairwise_performance(scores: &[f64], judgments: &JudgmentSet) -> Result<EvalReport> {
    if judgments.is_empty() {
        return Err(Error::EmptyJudgments);
    }
    let (mut agree, mut disagree, mut tie) = (0, 0, 0);
    for &(p, o) in judgments.pairs() {
        let (sp, so) = match (scores.get(p.index()), scores.get(o.index())) {
            (Some(&sp), Some(&so)) => (sp, so),
            _ => {
                return Err(Error::LengthMismatch {
                    expected: p.index().max(o.index()) + 1,
                    actual: scores.len(),
                })
            }
        };
        if sp > so {
            agree += 1;
        } else if sp < so {
            disagree += 1;
        } else {
            tie += 1;
        }
    }
    let (coverage, uniqueness) = coverage_and_uniqueness(scores);
    Ok(EvalReport {
        performance: agree as f64 / judgments.len() as f64,
        coverage,
        uniqueness,
        agree,
        disagree,
        tie,
        excluded_pairs: judgments.excluded(),
    })
}

/// Coverage is the fraction of papers scored above zero; uniqueness is the
/// number of distinct positive values over the number of positive entries.
pub fn coverage_and_uniqueness(scores: &[f64]) -> (f64, f64) {
    let mut positive: Vec<f64> = scores.iter().copied().filter(|&s| s > 0.0).collect();
    if positive.is_empty() {
        return (0.0, 0.0);
    }
    let coverage = positive.len() as f64 / scores.len() as f64;
    positive.sort_unstable_by(f64::total_cmp);
    let distinct = 1 + positive.windows(2).filter(|w| w[0] != w[1]).count();
    (coverage, distinct as f64 / positive.len() as f64)
}

/// 1-based ranks; tied values share the average of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Spearman's rho with average ranks for ties.
///
/// `Ok(None)` when either vector is constant or has fewer than two entries.
pub fn spearman_correlation(a: &[f64], b: &[f64]) -> Result<Option<f64>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    if a.len() < 2 {
        return Ok(None);
    }
    let (ra, rb) = (average_ranks(a), average_ranks(b));
    let mean = (a.len() as f64 + 1.0) / 2.0;
    let (mut cov, mut va, mut vb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        let (dx, dy) = (x - mean, y - mean);
        cov += dx * dy;
        va += dx * dx;
        vb += dy * dy;
    }
    if va == 0.0 || vb == 0.0 {
        return Ok(None);
    }
    Ok(Some((cov / (va * vb).sqrt()).clamp(-1.0, 1.0)))
}
