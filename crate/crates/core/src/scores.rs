//! Dense per-paper score vectors and the `scores.tsv` interchange format.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use indexmap::IndexSet;

use crate::corpus::{read_pairs, CitationGraph, NodeId, Strictness};
use crate::error::{Error, Result};
use crate::par;

/// Non-negative score per node, indexed by [`NodeId`].
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreVector {
    scores: Vec<f64>,
    coverage: f64,
}

impl ScoreVector {
    /// Wraps raw scores and records coverage (fraction strictly positive).
    pub fn new(scores: Vec<f64>) -> Self {
        let coverage = coverage_of(&scores);
        ScoreVector { scores, coverage }
    }

    pub fn zeros(len: usize) -> Self {
        ScoreVector::new(vec![0.0; len])
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.scores
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.scores
    }

    pub fn get(&self, node: NodeId) -> f64 {
        self.scores[node.index()]
    }

    /// Fraction of entries with score > 0; 0 for an empty vector.
    pub fn coverage(&self) -> f64 {
        self.coverage
    }

    pub fn sum(&self) -> f64 {
        par::stable_sum(&self.scores)
    }

    /// Smallest strictly positive entry.
    pub fn min_positive(&self) -> Option<f64> {
        self.scores
            .iter()
            .copied()
            .filter(|&s| s > 0.0)
            .min_by(f64::total_cmp)
    }

    /// Divides by the maximum so values land in `[0, 1]`. Order preserving.
    pub fn max_normalized(&self) -> ScoreVector {
        let max = self.scores.iter().copied().fold(0.0, f64::max);
        if max <= 0.0 {
            return self.clone();
        }
        ScoreVector::new(self.scores.iter().map(|s| s / max).collect())
    }
}

fn coverage_of(scores: &[f64]) -> f64 {
    if scores.is_empty() {
        return 0.0;
    }
    scores.iter().filter(|&&s| s > 0.0).count() as f64 / scores.len() as f64
}

/// Renders a score with 17 significant digits; parses back to the same bits.
pub fn format_score(score: f64) -> String {
    format!("{score:.16e}")
}

/// Writes `# header` lines followed by `label\tscore` for every entry.
pub fn write_scores<'a, W, I>(mut out: W, header: &[String], labels: I, scores: &[f64]) -> std::io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a str>,
{
    for line in header {
        writeln!(out, "# {line}")?;
    }
    for (label, &score) in labels.into_iter().zip(scores) {
        writeln!(out, "{label}\t{}", format_score(score))?;
    }
    Ok(())
}

/// Like [`write_scores`] but only for defined entries.
pub fn write_defined_scores<'a, W, I>(
    mut out: W,
    header: &[String],
    labels: I,
    scores: &[Option<f64>],
) -> std::io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a str>,
{
    for line in header {
        writeln!(out, "# {line}")?;
    }
    for (label, score) in labels.into_iter().zip(scores) {
        if let Some(score) = score {
            writeln!(out, "{label}\t{}", format_score(*score))?;
        }
    }
    Ok(())
}

/// Scores keyed by string id, in file order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScoreTable {
    pub labels: IndexSet<String>,
    pub scores: Vec<f64>,
}

impl ScoreTable {
    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels.get_index_of(label).map(|i| self.scores[i])
    }

    /// Scores in graph node order; ids missing from the table score 0.
    pub fn align(&self, graph: &CitationGraph) -> ScoreVector {
        ScoreVector::new(graph.labels().map(|l| self.get(l).unwrap_or(0.0)).collect())
    }

    /// Entries whose label is in the graph, as optional values per node.
    pub fn align_optional(&self, graph: &CitationGraph) -> Vec<Option<f64>> {
        graph.labels().map(|l| self.get(l)).collect()
    }

    pub fn as_vector(&self) -> ScoreVector {
        ScoreVector::new(self.scores.clone())
    }
}

/// Reads `label\tscore` lines. Scores must be finite and non-negative.
pub fn parse_scores<R: BufRead>(reader: R) -> Result<ScoreTable> {
    let mut table = ScoreTable::default();
    let mut bad: Option<String> = None;
    let mut report = Default::default();
    read_pairs(reader, Strictness::Strict, &mut report, |label, value| {
        if bad.is_some() {
            return;
        }
        match value.trim().parse::<f64>() {
            Ok(v) if v.is_finite() && v >= 0.0 => {
                let (i, fresh) = table.labels.insert_full(label.to_owned());
                if fresh {
                    table.scores.push(v);
                } else {
                    table.scores[i] = v;
                }
            }
            _ => bad = Some(format!("invalid score {value:?} for {label:?}")),
        }
    })?;
    match bad {
        Some(reason) => Err(Error::Malformed {
            line: report.data_lines,
            reason,
        }),
        None => Ok(table),
    }
}

pub fn load_scores(path: &Path) -> Result<ScoreTable> {
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    parse_scores(BufReader::new(file))
}
