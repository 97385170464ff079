//! Browser demo: three small experiments on synthetic corpora.
//!
//! The plain functions (`rank_corpus`, `convergence`, `sweep_curve`) hold all
//! the logic and are tested natively; the `#[wasm_bindgen]` wrappers only
//! flatten their results into typed arrays for `www/index.html`.

use alef_core::{
    alef_closed_form, alef_monte_carlo, author_scores, generate_corpus, generate_judgments,
    in_degree_rank, spearman_correlation, weight_sweep, SynthConfig, WalkConfig,
};
use wasm_bindgen::prelude::*;

fn corpus_config(papers: usize, mean_refs: f64, exponent: f64, seed: u64) -> SynthConfig {
    SynthConfig {
        paper_count: papers,
        mean_out_degree: mean_refs,
        preferential_exponent: exponent,
        author_count: (papers / 4).max(1),
        seed,
        ..SynthConfig::default()
    }
}

fn js_err(err: alef_core::Error) -> JsError {
    JsError::new(&err.to_string())
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankSummary {
    pub alef: Vec<f64>,
    pub in_degree: Vec<f64>,
    pub alef_coverage: f64,
    pub in_degree_coverage: f64,
    pub rho: Option<f64>,
    pub edges: usize,
}

/// ALEF against in-degree on one synthetic corpus.
pub fn rank_corpus(papers: usize, mean_refs: f64, exponent: f64, seed: u64) -> alef_core::Result<RankSummary> {
    let (graph, _) = generate_corpus(&corpus_config(papers, mean_refs, exponent, seed))?;
    let alef = alef_closed_form(&graph, &WalkConfig::default())?;
    let in_degree = in_degree_rank(&graph);
    let rho = spearman_correlation(alef.as_slice(), in_degree.as_slice())?;
    Ok(RankSummary {
        alef_coverage: alef.coverage(),
        in_degree_coverage: in_degree.coverage(),
        rho,
        edges: graph.edge_count(),
        alef: alef.into_vec(),
        in_degree: in_degree.into_vec(),
    })
}

/// Largest per-node gap between simulated and exact ALEF, for each sample
/// count in `samples`.
pub fn convergence(papers: usize, mean_refs: f64, seed: u64, samples: &[u64]) -> alef_core::Result<Vec<f64>> {
    let (graph, _) = generate_corpus(&corpus_config(papers, mean_refs, 1.0, seed))?;
    let exact = alef_closed_form(&graph, &WalkConfig::default())?;
    samples
        .iter()
        .map(|&n| {
            let config = WalkConfig {
                sample_count: n,
                seed,
                ..WalkConfig::default()
            };
            let mc = alef_monte_carlo(&graph, &config)?;
            Ok(exact
                .as_slice()
                .iter()
                .zip(mc.as_slice())
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
        })
        .collect()
}

/// Pairwise performance of the ALEF/PA blend at `steps + 1` evenly spaced
/// ALEF weights from 0 to 1, judged against noisy in-degree judgments.
pub fn sweep_curve(papers: usize, noise: f64, steps: usize, seed: u64) -> alef_core::Result<Vec<(f64, f64)>> {
    let (graph, authorship) = generate_corpus(&corpus_config(papers, 8.0, 1.0, seed))?;
    let alef = alef_closed_form(&graph, &WalkConfig::default())?;
    let table = author_scores(&alef, &authorship)?;
    let oracle = in_degree_rank(&graph);
    let judgments = generate_judgments(oracle.as_slice(), papers, noise, seed)?;
    let steps = steps.max(1);
    let grid: Vec<(f64, f64)> = (0..=steps)
        .map(|i| {
            let w = i as f64 / steps as f64;
            (w, 1.0 - w)
        })
        .collect();
    let report = weight_sweep(&alef, &table.pa, &judgments, &grid)?;
    Ok(report
        .entries
        .iter()
        .map(|e| (e.alef_weight, e.report.performance))
        .collect())
}

#[wasm_bindgen]
pub struct RankView {
    inner: RankSummary,
}

#[wasm_bindgen]
impl RankView {
    pub fn alef(&self) -> Vec<f64> {
        self.inner.alef.clone()
    }

    #[wasm_bindgen(js_name = inDegree)]
    pub fn in_degree(&self) -> Vec<f64> {
        self.inner.in_degree.clone()
    }

    #[wasm_bindgen(getter, js_name = alefCoverage)]
    pub fn alef_coverage(&self) -> f64 {
        self.inner.alef_coverage
    }

    #[wasm_bindgen(getter, js_name = inDegreeCoverage)]
    pub fn in_degree_coverage(&self) -> f64 {
        self.inner.in_degree_coverage
    }

    /// NaN when undefined.
    #[wasm_bindgen(getter)]
    pub fn rho(&self) -> f64 {
        self.inner.rho.unwrap_or(f64::NAN)
    }

    #[wasm_bindgen(getter)]
    pub fn edges(&self) -> usize {
        self.inner.edges
    }
}

#[wasm_bindgen(js_name = rankCorpus)]
pub fn rank_corpus_js(papers: usize, mean_refs: f64, exponent: f64, seed: u32) -> Result<RankView, JsError> {
    let inner = rank_corpus(papers, mean_refs, exponent, u64::from(seed)).map_err(js_err)?;
    Ok(RankView { inner })
}

#[wasm_bindgen(js_name = convergence)]
pub fn convergence_js(papers: usize, mean_refs: f64, seed: u32, samples: Vec<f64>) -> Result<Vec<f64>, JsError> {
    let samples: Vec<u64> = samples.iter().map(|&s| s.max(1.0) as u64).collect();
    convergence(papers, mean_refs, u64::from(seed), &samples).map_err(js_err)
}

/// Flattened `[w0, perf0, w1, perf1, ...]`.
#[wasm_bindgen(js_name = sweepCurve)]
pub fn sweep_curve_js(papers: usize, noise: f64, steps: usize, seed: u32) -> Result<Vec<f64>, JsError> {
    let curve = sweep_curve(papers, noise, steps, u64::from(seed)).map_err(js_err)?;
    Ok(curve.into_iter().flat_map(|(w, p)| [w, p]).collect())
}
