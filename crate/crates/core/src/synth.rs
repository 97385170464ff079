//! Reproducible synthetic citation corpora.
//!
//! Papers arrive in index order. Paper `t` cites distinct earlier papers with
//! probability proportional to `(in_degree + 1) ^ exponent`, so every edge
//! points from a later index to an earlier one and the graph is acyclic by
//! construction. Authors are drawn from a Zipf-like popularity distribution.

use indexmap::IndexSet;
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{AuthorId, AuthorshipMap, CitationGraph, NodeId};
use crate::error::{Error, Result};
use crate::evaluate::JudgmentSet;

const CITATION_STREAM: u64 = 0;
const AUTHOR_STREAM: u64 = 1;
const JUDGMENT_STREAM: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub paper_count: usize,
    pub mean_out_degree: f64,
    /// 0 is uniform attachment, 1 is linear preferential attachment.
    pub preferential_exponent: f64,
    pub author_count: usize,
    pub mean_authors_per_paper: f64,
    pub judgment_pair_count: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            paper_count: 1000,
            mean_out_degree: 10.0,
            preferential_exponent: 1.0,
            author_count: 300,
            mean_authors_per_paper: 3.0,
            judgment_pair_count: 1000,
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.paper_count < 2 {
            return fail(format!("paper count must be at least 2, got {}", self.paper_count));
        }
        let m = self.mean_out_degree;
        if !(m.is_finite() && m > 0.0 && m < self.paper_count as f64) {
            return fail(format!(
                "mean out-degree must be positive and below the paper count, got {m}"
            ));
        }
        let e = self.preferential_exponent;
        if !(e.is_finite() && e >= 0.0) {
            return fail(format!("preferential exponent must be non-negative, got {e}"));
        }
        if self.author_count == 0 {
            return fail("author count must be at least 1".into());
        }
        let a = self.mean_authors_per_paper;
        if !(a.is_finite() && a > 0.0) {
            return fail(format!("mean authors per paper must be positive, got {a}"));
        }
        Ok(())
    }
}

/// Integer with mean `mean`: `floor(mean)`, plus one with probability
/// `frac(mean)`. Keeping the spread minimal means out-degree noise does not
/// swamp the attachment signal (every paper cites about `mean` others).
fn draw_count<R: Rng>(rng: &mut R, mean: f64) -> usize {
    let whole = mean.floor();
    whole as usize + usize::from(rng.gen::<f64>() < mean - whole)
}

/// Prefix sums over non-negative weights with point updates and sampling.
struct Fenwick {
    tree: Vec<f64>,
}

impl Fenwick {
    fn new(len: usize) -> Self {
        Fenwick {
            tree: vec![0.0; len + 1],
        }
    }

    fn add(&mut self, index: usize, delta: f64) {
        let mut i = index + 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    fn total(&self, len: usize) -> f64 {
        let mut i = len;
        let mut sum = 0.0;
        while i > 0 {
            sum += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        sum
    }

    /// Smallest index whose inclusive prefix sum exceeds `target`.
    fn find(&self, mut target: f64) -> usize {
        let mut pos = 0;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= target {
                pos = next;
                target -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

fn attachment_weight(in_degree: u32, exponent: f64) -> f64 {
    let base = f64::from(in_degree) + 1.0;
    if exponent == 1.0 {
        base
    } else if exponent == 0.0 {
        1.0
    } else {
        base.powf(exponent)
    }
}

/// Generates a time-ordered citation graph plus authorship.
pub fn generate_corpus(config: &SynthConfig) -> Result<(CitationGraph, AuthorshipMap)> {
    config.validate()?;
    let n = config.paper_count;
    let labels: IndexSet<String> = (0..n).map(|i| format!("p{i}")).collect();
    let edges = generate_edges(config);
    let (graph, _, _) = CitationGraph::from_interned(labels, edges);
    let authorship = generate_authorship(config, n);
    Ok((graph, authorship))
}

fn generate_edges(config: &SynthConfig) -> Vec<(NodeId, NodeId)> {
    let n = config.paper_count;
    let exponent = config.preferential_exponent;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(CITATION_STREAM);

    let mut tree = Fenwick::new(n);
    let mut weight = vec![0.0f64; n];
    let mut in_degree = vec![0u32; n];
    let mut edges = Vec::with_capacity((config.mean_out_degree * n as f64) as usize);
    let mut chosen: Vec<usize> = Vec::new();

    for t in 0..n {
        let wanted = draw_count(&mut rng, config.mean_out_degree).min(t);
        chosen.clear();
        while chosen.len() < wanted {
            let total = tree.total(t);
            let pick = tree.find(rng.gen::<f64>() * total);
            if pick >= t || weight[pick] <= 0.0 {
                // only reachable through rounding at the upper boundary
                continue;
            }
            chosen.push(pick);
            tree.add(pick, -weight[pick]);
            weight[pick] = 0.0;
        }
        for &c in &chosen {
            edges.push((NodeId::new(t), NodeId::new(c)));
            in_degree[c] += 1;
            weight[c] = attachment_weight(in_degree[c], exponent);
            tree.add(c, weight[c]);
        }
        weight[t] = attachment_weight(0, exponent);
        tree.add(t, weight[t]);
    }
    edges
}

fn generate_authorship(config: &SynthConfig, paper_count: usize) -> AuthorshipMap {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(AUTHOR_STREAM);
    let authors: IndexSet<String> = (0..config.author_count).map(|i| format!("a{i}")).collect();
    let popularity =
        WeightedIndex::new((0..config.author_count).map(|i| 1.0 / (i as f64 + 1.0))).expect("positive weights");

    let mut pairs = Vec::new();
    let mut picked: Vec<usize> = Vec::new();
    for p in 0..paper_count {
        let wanted = draw_count(&mut rng, config.mean_authors_per_paper).min(config.author_count);
        picked.clear();
        while picked.len() < wanted {
            let a = popularity.sample(&mut rng);
            if !picked.contains(&a) {
                picked.push(a);
            }
        }
        pairs.extend(picked.iter().map(|&a| (NodeId::new(p), AuthorId::new(a))));
    }
    AuthorshipMap::from_interned(authors, paper_count, pairs).0
}

/// Samples `pair_count` judgment pairs among positively scored papers with
/// distinct oracle scores. Each pair prefers the higher-scored paper and is
/// then flipped independently with probability `noise`.
pub fn generate_judgments(oracle: &[f64], pair_count: usize, noise: f64, seed: u64) -> Result<JudgmentSet> {
    if !(0.0..=1.0).contains(&noise) {
        return Err(Error::Config(format!("noise must lie in [0, 1], got {noise}")));
    }
    let candidates: Vec<usize> = (0..oracle.len()).filter(|&i| oracle[i] > 0.0).collect();
    let distinct = candidates
        .iter()
        .any(|&i| oracle[i] != oracle[candidates[0]]);
    if !distinct {
        return Err(Error::Sampling(
            "oracle needs at least two distinct positive scores".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(JUDGMENT_STREAM);
    let mut pairs = Vec::with_capacity(pair_count);
    while pairs.len() < pair_count {
        let a = candidates[rng.gen_range(0..candidates.len() as u64) as usize];
        let b = candidates[rng.gen_range(0..candidates.len() as u64) as usize];
        if oracle[a] == oracle[b] {
            continue;
        }
        let (hi, lo) = if oracle[a] > oracle[b] { (a, b) } else { (b, a) };
        let flip = rng.gen::<f64>() < noise;
        let pair = if flip { (lo, hi) } else { (hi, lo) };
        pairs.push((NodeId::new(pair.0), NodeId::new(pair.1)));
    }
    Ok(JudgmentSet::new(pairs))
}
