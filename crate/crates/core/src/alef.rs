//! Article-level eigenfactor: a teleport-to-link random walk.
//!
//! One round of the walk:
//!
//! 1. pick an edge uniformly at random and land on either endpoint with
//!    probability 1/2 (optionally counted as an arrival);
//! 2. follow up to `k` citations, each to a uniformly chosen cited paper,
//!    counting an arrival at every destination;
//! 3. teleport again.
//!
//! A node's score is its share of all arrivals. Because the walker teleports
//! every `k` steps the expected arrival counts are a finite linear recurrence,
//! so [`alef_closed_form`] propagates the landing distribution through `k`
//! sparse steps and needs no convergence criterion. [`alef_monte_carlo`]
//! simulates the same process and serves as an independent check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{CitationGraph, NodeId};
use crate::error::{Error, Result};
use crate::par;
use crate::scores::ScoreVector;

/// Generator used for every simulation in this crate. Each independent
/// stream is `ChaCha8Rng::seed_from_u64(seed)` with `set_stream(index)`.
pub const PRNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.3, seed_from_u64, stream per worker)";

/// What happens when the walker stands on a paper that cites nothing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DanglingPolicy {
    /// The walk ends; the remaining steps produce no arrivals.
    #[default]
    Halt,
    /// The walker stays put and is credited one arrival per remaining step.
    SelfArrival,
}

impl DanglingPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            DanglingPolicy::Halt => "halt",
            DanglingPolicy::SelfArrival => "self",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct WalkConfig {
    /// Directed steps taken after each landing (`k`).
    pub steps_between_teleports: u32,
    /// Whether the landing itself is an arrival.
    pub count_landing_arrival: bool,
    pub dangling_policy: DanglingPolicy,
    /// Monte Carlo only.
    pub seed: u64,
    /// Monte Carlo only: number of walks that record at least one arrival.
    pub sample_count: u64,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            steps_between_teleports: 1,
            count_landing_arrival: true,
            dangling_policy: DanglingPolicy::Halt,
            seed: 0,
            sample_count: 1_000_000,
        }
    }
}

impl WalkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps_between_teleports == 0 {
            return Err(Error::Config("steps between teleports must be at least 1".into()));
        }
        Ok(())
    }

    fn validate_sampling(&self) -> Result<()> {
        self.validate()?;
        if self.sample_count == 0 {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        Ok(())
    }

    /// `key: value` lines describing this configuration.
    pub fn describe(&self) -> Vec<String> {
        vec![
            format!("steps: {}", self.steps_between_teleports),
            format!("count_landing: {}", self.count_landing_arrival),
            format!("dangling: {}", self.dangling_policy.as_str()),
        ]
    }
}

/// Landing probability of every node: `(out + in) / 2|E|`.
pub fn landing_mass(graph: &CitationGraph) -> Vec<f64> {
    let mut mass = vec![0.0; graph.node_count()];
    let twice_edges = 2.0 * graph.edge_count() as f64;
    if twice_edges == 0.0 {
        return mass;
    }
    par::fill_indexed(&mut mass, |i| {
        let n = NodeId::new(i);
        (graph.out_degree(n) + graph.in_degree(n)) as f64 / twice_edges
    });
    mass
}

/// Exact ALEF scores by `k` pull-style propagation steps over the reverse
/// adjacency. Each node sums its citers in a fixed order, so the result does
/// not depend on the number of threads.
pub fn alef_closed_form(graph: &CitationGraph, config: &WalkConfig) -> Result<ScoreVector> {
    config.validate()?;
    let n = graph.node_count();
    if graph.edge_count() == 0 {
        return Ok(ScoreVector::zeros(n));
    }

    let mut current = landing_mass(graph);
    let mut arrivals = if config.count_landing_arrival {
        current.clone()
    } else {
        vec![0.0; n]
    };
    let stay = config.dangling_policy == DanglingPolicy::SelfArrival;
    let mut share = vec![0.0; n];
    let mut next = vec![0.0; n];

    for _ in 0..config.steps_between_teleports {
        par::fill_indexed(&mut share, |u| {
            let out = graph.out_degree(NodeId::new(u));
            if out == 0 {
                0.0
            } else {
                current[u] / out as f64
            }
        });
        par::fill_indexed(&mut next, |v| {
            let node = NodeId::new(v);
            let mut mass = 0.0;
            for &u in graph.cited_by(node) {
                mass += share[u.index()];
            }
            if stay && graph.out_degree(node) == 0 {
                mass += current[v];
            }
            mass
        });
        for (a, &x) in arrivals.iter_mut().zip(&next) {
            *a += x;
        }
        std::mem::swap(&mut current, &mut next);
    }

    let total = par::stable_sum(&arrivals);
    let mut scores = vec![0.0; n];
    par::fill_indexed(&mut scores, |i| arrivals[i] / total);
    Ok(ScoreVector::new(scores))
}

/// Public entry point: exact ALEF with coverage populated.
pub fn alef_rank(graph: &CitationGraph, config: &WalkConfig) -> Result<ScoreVector> {
    alef_closed_form(graph, config)
}

/// Simulated ALEF on a single random stream.
pub fn alef_monte_carlo(graph: &CitationGraph, config: &WalkConfig) -> Result<ScoreVector> {
    alef_monte_carlo_workers(graph, config, 1)
}

/// Simulated ALEF split over `workers` independent streams.
///
/// The result is a pure function of `(graph, config, workers)`.
pub fn alef_monte_carlo_workers(
    graph: &CitationGraph,
    config: &WalkConfig,
    workers: usize,
) -> Result<ScoreVector> {
    let counts = arrival_counts(graph, config, workers)?;
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Ok(ScoreVector::zeros(graph.node_count()));
    }
    Ok(ScoreVector::new(
        counts.iter().map(|&c| c as f64 / total as f64).collect(),
    ))
}

/// Raw arrival histogram of `config.sample_count` simulated walks.
///
/// Walks that record no arrival at all (possible only when the landing is
/// not counted and the walker lands on a dangling paper under
/// [`DanglingPolicy::Halt`]) carry no information after normalization and are
/// redrawn, so every sample contributes at least one arrival.
pub fn arrival_counts(graph: &CitationGraph, config: &WalkConfig, workers: usize) -> Result<Vec<u64>> {
    config.validate_sampling()?;
    if workers == 0 {
        return Err(Error::Config("worker count must be at least 1".into()));
    }
    let n = graph.node_count();
    if graph.edge_count() == 0 {
        return Ok(vec![0; n]);
    }
    let per = config.sample_count / workers as u64;
    let extra = config.sample_count % workers as u64;
    let quota = |w: usize| per + u64::from((w as u64) < extra);

    let run = |w: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(w as u64);
        let mut counts = vec![0u64; n];
        simulate(graph, config, quota(w), &mut rng, &mut counts);
        counts
    };

    #[cfg(feature = "parallel")]
    let parts: Vec<Vec<u64>> = {
        use rayon::prelude::*;
        (0..workers).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Vec<u64>> = (0..workers).map(run).collect();

    let mut merged = vec![0u64; n];
    for part in parts {
        for (m, c) in merged.iter_mut().zip(part) {
            *m += c;
        }
    }
    Ok(merged)
}

fn simulate<R: Rng>(graph: &CitationGraph, config: &WalkConfig, samples: u64, rng: &mut R, counts: &mut [u64]) {
    let edges = graph.edges();
    let edge_count = edges.len() as u64;
    let k = u64::from(config.steps_between_teleports);
    let mut done = 0;
    while done < samples {
        let (u, v) = edges[rng.gen_range(0..edge_count) as usize];
        let mut at = if rng.gen::<bool>() { u } else { v };
        let mut recorded = 0u64;
        if config.count_landing_arrival {
            counts[at.index()] += 1;
            recorded += 1;
        }
        for step in 0..k {
            let cited = graph.cites(at);
            if cited.is_empty() {
                if config.dangling_policy == DanglingPolicy::SelfArrival {
                    let remaining = k - step;
                    counts[at.index()] += remaining;
                    recorded += remaining;
                }
                break;
            }
            at = cited[rng.gen_range(0..cited.len() as u64) as usize];
            counts[at.index()] += 1;
            recorded += 1;
        }
        if recorded > 0 {
            done += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> CitationGraph {
        CitationGraph::from_pairs(&[("A", "B"), ("C", "B"), ("C", "A")])
    }

    fn config(k: u32, landing: bool, dangling: DanglingPolicy) -> WalkConfig {
        WalkConfig {
            steps_between_teleports: k,
            count_landing_arrival: landing,
            dangling_policy: dangling,
            ..Default::default()
        }
    }

    fn assert_scores(got: &ScoreVector, want: &[f64]) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.as_slice().iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{:?} vs {want:?}", got.as_slice());
        }
    }

    // Expected values below were enumerated with exact rationals over every
    // (edge, endpoint, path) outcome.

    #[test]
    fn triangle_defaults() {
        let s = alef_closed_form(&triangle(), &WalkConfig::default()).unwrap();
        assert_scores(&s, &[0.3, 0.5, 0.2]);
        assert_eq!(s.coverage(), 1.0);
    }

    #[test]
    fn triangle_without_landing_arrival() {
        let s = alef_closed_form(&triangle(), &config(1, false, DanglingPolicy::Halt)).unwrap();
        assert_scores(&s, &[0.25, 0.75, 0.0]);
        assert_eq!(s.get(NodeId::new(2)), 0.0);
    }

    #[test]
    fn single_edge() {
        let g = CitationGraph::from_pairs(&[("A", "B")]);
        let s = alef_closed_form(&g, &WalkConfig::default()).unwrap();
        assert_scores(&s, &[1.0 / 3.0, 2.0 / 3.0]);
    }

    #[test]
    fn longer_walks_and_self_arrival() {
        let g = triangle();
        let s = alef_closed_form(&g, &config(2, true, DanglingPolicy::Halt)).unwrap();
        assert_scores(&s, &[3.0 / 11.0, 6.0 / 11.0, 2.0 / 11.0]);
        let s = alef_closed_form(&g, &config(2, true, DanglingPolicy::SelfArrival)).unwrap();
        assert_scores(&s, &[1.0 / 6.0, 13.0 / 18.0, 1.0 / 9.0]);
        let s = alef_closed_form(&g, &config(3, false, DanglingPolicy::SelfArrival)).unwrap();
        assert_scores(&s, &[1.0 / 18.0, 17.0 / 18.0, 0.0]);
    }

    #[test]
    fn empty_graph_scores_zero() {
        let s = alef_rank(&CitationGraph::default(), &WalkConfig::default()).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.coverage(), 0.0);

        let mut g = CitationGraph::default();
        g.intern_isolated("lonely");
        let s = alef_rank(&g, &WalkConfig::default()).unwrap();
        assert_eq!(s.as_slice(), &[0.0]);
    }

    #[test]
    fn isolated_node_lowers_coverage() {
        let mut g = CitationGraph::from_pairs(&[("A", "B")]);
        g.intern_isolated("D");
        let s = alef_rank(&g, &WalkConfig::default()).unwrap();
        assert!((s.coverage() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn zero_steps_rejected() {
        let err = alef_rank(&triangle(), &config(0, true, DanglingPolicy::Halt)).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        let mc = WalkConfig {
            sample_count: 0,
            ..Default::default()
        };
        assert!(alef_monte_carlo(&triangle(), &mc).is_err());
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let g = CitationGraph::from_pairs(&[("A", "B")]);
        let cfg = WalkConfig {
            sample_count: 10,
            seed: 42,
            ..Default::default()
        };
        let a = arrival_counts(&g, &cfg, 1).unwrap();
        let b = arrival_counts(&g, &cfg, 1).unwrap();
        assert_eq!(a, b);
        // 10 landings plus one step for every landing on A.
        assert_eq!(a[1] - (10 - a[0]), a[0]);
        assert_eq!(a.iter().sum::<u64>(), 10 + a[0]);
    }

    #[test]
    fn monte_carlo_triangle_matches_closed_form() {
        let cfg = WalkConfig {
            seed: 7,
            ..Default::default()
        };
        let s = alef_monte_carlo(&triangle(), &cfg).unwrap();
        for (got, want) in s.as_slice().iter().zip([0.3, 0.5, 0.2]) {
            assert!((got - want).abs() < 0.005, "{got} vs {want}");
        }
    }

    #[test]
    fn monte_carlo_workers_partition_samples() {
        let cfg = WalkConfig {
            sample_count: 1001,
            count_landing_arrival: false,
            ..Default::default()
        };
        // k = 1 without landing: every recorded walk makes exactly one arrival.
        for workers in [1, 3, 8] {
            let counts = arrival_counts(&triangle(), &cfg, workers).unwrap();
            assert_eq!(counts.iter().sum::<u64>(), 1001);
            assert_eq!(counts[2], 0);
        }
    }
}
