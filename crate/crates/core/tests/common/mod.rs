//! Reference implementations kept deliberately naive and independent of the
//! crate's propagation code: path enumeration over explicit adjacency lists.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use alef_core::{CitationGraph, DanglingPolicy, WalkConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random time-ordered DAG on `n` nodes: node `i` may only cite `j < i`.
/// Edges are distinct. Labels are `n{i}`.
pub fn random_dag(seed: u64, n: usize, max_edges: usize) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut set = BTreeSet::new();
    let target = rng.gen_range(1..=max_edges.max(1));
    let mut attempts = 0;
    while set.len() < target && attempts < target * 20 && n >= 2 {
        attempts += 1;
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(0..i);
        set.insert((i, j));
    }
    let mut edges: Vec<_> = set.into_iter().collect();
    // Shuffle so load order is not sorted.
    for k in (1..edges.len()).rev() {
        let r = rng.gen_range(0..=k);
        edges.swap(k, r);
    }
    edges
        .into_iter()
        .map(|(i, j)| (format!("n{i}"), format!("n{j}")))
        .collect()
}

/// Expected normalized arrivals per label, by enumerating every walk.
pub fn enumerate_alef(pairs: &[(String, String)], config: &WalkConfig) -> BTreeMap<String, f64> {
    let edges: BTreeSet<(&str, &str)> = pairs
        .iter()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let mut out: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut arrivals: BTreeMap<String, f64> = BTreeMap::new();
    for (a, b) in pairs {
        arrivals.insert(a.clone(), 0.0);
        arrivals.insert(b.clone(), 0.0);
    }
    for &(a, b) in &edges {
        out.entry(a).or_default().push(b);
    }
    if edges.is_empty() {
        return arrivals;
    }
    let p_edge = 1.0 / edges.len() as f64;
    for &(a, b) in &edges {
        for start in [a, b] {
            let p = p_edge * 0.5;
            if config.count_landing_arrival {
                *arrivals.get_mut(start).unwrap() += p;
            }
            walk(start, config.steps_between_teleports, p, &out, config.dangling_policy, &mut arrivals);
        }
    }
    let total: f64 = arrivals.values().sum();
    if total > 0.0 {
        for v in arrivals.values_mut() {
            *v /= total;
        }
    }
    arrivals
}

fn walk(
    at: &str,
    steps: u32,
    p: f64,
    out: &BTreeMap<&str, Vec<&str>>,
    policy: DanglingPolicy,
    arrivals: &mut BTreeMap<String, f64>,
) {
    if steps == 0 {
        return;
    }
    match out.get(at) {
        Some(next) => {
            let q = p / next.len() as f64;
            for &v in next {
                *arrivals.get_mut(v).unwrap() += q;
                walk(v, steps - 1, q, out, policy, arrivals);
            }
        }
        None => {
            if policy == DanglingPolicy::SelfArrival {
                *arrivals.get_mut(at).unwrap() += p;
                walk(at, steps - 1, p, out, policy, arrivals);
            }
        }
    }
}

/// Score of every graph node, looked up by label.
pub fn by_label(graph: &CitationGraph, scores: &[f64]) -> BTreeMap<String, f64> {
    graph
        .nodes()
        .map(|n| (graph.label(n).to_string(), scores[n.index()]))
        .collect()
}

/// Spearman rho straight from its definition: Pearson correlation of
/// average ranks, with ranks found by counting.
pub fn spearman_by_counting(a: &[f64], b: &[f64]) -> Option<f64> {
    let rank = |xs: &[f64]| -> Vec<f64> {
        xs.iter()
            .map(|&x| {
                let below = xs.iter().filter(|&&y| y < x).count() as f64;
                let equal = xs.iter().filter(|&&y| y == x).count() as f64;
                below + (equal + 1.0) / 2.0
            })
            .collect()
    };
    let (ra, rb) = (rank(a), rank(b));
    let n = a.len() as f64;
    let ma = ra.iter().sum::<f64>() / n;
    let mb = rb.iter().sum::<f64>() / n;
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = ra.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mb).powi(2)).sum();
    if va == 0.0 || vb == 0.0 {
        None
    } else {
        Some(cov / (va * vb).sqrt())
    }
}

pub fn configs() -> Vec<WalkConfig> {
    let mut out = Vec::new();
    for k in [1, 2, 3] {
        for landing in [true, false] {
            for policy in [DanglingPolicy::Halt, DanglingPolicy::SelfArrival] {
                out.push(WalkConfig {
                    steps_between_teleports: k,
                    count_landing_arrival: landing,
                    dangling_policy: policy,
                    ..WalkConfig::default()
                });
            }
        }
    }
    out
}
