//! Final per-paper scores: a weighted blend of ALEF and paper-author scores,
//! optional random fill for unranked papers, and a manual weight sweep.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::{pairwise_performance, EvalReport, JudgmentSet};
use crate::par;
use crate::scores::ScoreVector;

/// Filled scores are drawn from `[0, FILL_FRACTION * min_positive)`.
pub const FILL_FRACTION: f64 = 0.999;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BlendConfig {
    pub alef_weight: f64,
    pub author_weight: f64,
    pub randomize_unranked: bool,
    pub seed: u64,
}

impl Default for BlendConfig {
    fn default() -> Self {
        BlendConfig {
            alef_weight: 0.7,
            author_weight: 0.3,
            randomize_unranked: false,
            seed: 0,
        }
    }
}

impl BlendConfig {
    /// Weights `(w, 1 - w)`.
    pub fn with_alef_weight(alef_weight: f64) -> Self {
        BlendConfig {
            alef_weight,
            author_weight: 1.0 - alef_weight,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, p) = (self.alef_weight, self.author_weight);
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&p) {
            return Err(Error::Config(format!("blend weights must lie in [0, 1], got {a} and {p}")));
        }
        if (a + p - 1.0).abs() > 1e-12 {
            return Err(Error::Config(format!("blend weights must sum to 1, got {a} + {p}")));
        }
        Ok(())
    }

    pub fn describe(&self) -> Vec<String> {
        vec![
            format!("alef_weight: {}", self.alef_weight),
            format!("author_weight: {}", self.author_weight),
            format!("randomize_unranked: {}", self.randomize_unranked),
            format!("seed: {}", self.seed),
        ]
    }
}

/// Blends one paper. A zero weight removes that component entirely, so
/// `(1, 0)` is the identity on ALEF and `(0, 1)` uses PA alone.
fn blend_one(alef: f64, pa: Option<f64>, alef_weight: f64, author_weight: f64) -> f64 {
    let alef = (alef > 0.0 && alef_weight > 0.0).then_some(alef);
    let pa = pa.filter(|&p| p > 0.0 && author_weight > 0.0);
    match (alef, pa) {
        (Some(a), Some(p)) => {
            // a + w_p (p - a) equals w_a a + w_p p when the weights sum to 1
            (a + author_weight * (p - a)).clamp(a.min(p), a.max(p))
        }
        (Some(a), None) => a,
        (None, Some(p)) => p,
        (None, None) => 0.0,
    }
}

/// Weighted blend where both scores exist, the available one otherwise.
pub fn blend_scores(alef: &ScoreVector, pa: &[Option<f64>], config: &BlendConfig) -> Result<ScoreVector> {
    config.validate()?;
    if alef.len() != pa.len() {
        return Err(Error::LengthMismatch {
            expected: alef.len(),
            actual: pa.len(),
        });
    }
    let alef_scores = alef.as_slice();
    let mut out = vec![0.0; alef.len()];
    par::fill_indexed(&mut out, |i| {
        blend_one(alef_scores[i], pa[i], config.alef_weight, config.author_weight)
    });
    let blended = ScoreVector::new(out);
    if config.randomize_unranked {
        return Ok(randomize_unranked(&blended, config.seed).scores);
    }
    Ok(blended)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Randomized {
    pub scores: ScoreVector,
    /// Number of zero entries that received a draw.
    pub filled: usize,
    /// Exclusive upper bound of the draws; `None` when nothing was ranked and
    /// the input came back unchanged.
    pub ceiling: Option<f64>,
}

/// Gives every zero-scored paper a small positive score below every ranked
/// paper. Paper `i` draws from its own ChaCha8 stream `i` under `seed`, so
/// the output does not depend on evaluation order.
pub fn randomize_unranked(scores: &ScoreVector, seed: u64) -> Randomized {
    let Some(min) = scores.min_positive() else {
        return Randomized {
            scores: scores.clone(),
            filled: 0,
            ceiling: None,
        };
    };
    let ceiling = FILL_FRACTION * min;
    let input = scores.as_slice();
    let mut out = vec![0.0; input.len()];
    par::fill_indexed(&mut out, |i| {
        if input[i] > 0.0 {
            return input[i];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        loop {
            let draw = rng.gen::<f64>() * ceiling;
            if draw > 0.0 && draw < ceiling {
                return draw;
            }
        }
    });
    let filled = input.iter().filter(|&&s| s <= 0.0).count();
    Randomized {
        scores: ScoreVector::new(out),
        filled,
        ceiling: Some(ceiling),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepEntry {
    pub alef_weight: f64,
    pub author_weight: f64,
    pub report: EvalReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
    /// Index of the best-performing entry; earliest wins ties.
    pub best: usize,
}

impl SweepReport {
    pub fn best_entry(&self) -> &SweepEntry {
        &self.entries[self.best]
    }
}

/// Evaluates the blend at every `(alef_weight, author_weight)` pair.
pub fn weight_sweep(
    alef: &ScoreVector,
    pa: &[Option<f64>],
    judgments: &JudgmentSet,
    grid: &[(f64, f64)],
) -> Result<SweepReport> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut entries = Vec::with_capacity(grid.len());
    for &(alef_weight, author_weight) in grid {
        let config = BlendConfig {
            alef_weight,
            author_weight,
            ..Default::default()
        };
        let blended = blend_scores(alef, pa, &config)?;
        entries.push(SweepEntry {
            alef_weight,
            author_weight,
            report: pairwise_performance(blended.as_slice(), judgments)?,
        });
    }
    let best = entries
        .iter()
        .enumerate()
        .fold(0, |best, (i, e)| {
            if e.report.performance > entries[best].report.performance {
                i
            } else {
                best
            }
        });
    Ok(SweepReport { entries, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::NodeId;

    #[test]
    fn worked_blend() {
        let alef = ScoreVector::new(vec![0.3, 0.0, 0.5, 0.0]);
        let pa = [Some(0.4), Some(0.4), None, None];
        let s = blend_scores(&alef, &pa, &BlendConfig::default()).unwrap();
        assert_eq!(s.as_slice(), &[0.33, 0.4, 0.5, 0.0]);
        assert_eq!(s.coverage(), 0.75);
    }

    #[test]
    fn unit_alef_weight_is_identity() {
        let alef = ScoreVector::new(vec![0.1, 0.0, 0.7, 0.2]);
        let pa = [Some(0.9), Some(0.4), None, Some(1e-9)];
        let s = blend_scores(&alef, &pa, &BlendConfig::with_alef_weight(1.0)).unwrap();
        for (a, b) in s.as_slice().iter().zip(alef.as_slice()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn unit_author_weight_uses_pa() {
        let alef = ScoreVector::new(vec![0.1, 0.0, 0.7]);
        let pa = [Some(0.9), Some(0.4), None];
        let s = blend_scores(&alef, &pa, &BlendConfig::with_alef_weight(0.0)).unwrap();
        assert_eq!(s.as_slice(), &[0.9, 0.4, 0.0]);
    }

    #[test]
    fn bad_weights_rejected() {
        let alef = ScoreVector::zeros(1);
        for (a, p) in [(0.7, 0.7), (1.5, -0.5), (f64::NAN, 0.5)] {
            let cfg = BlendConfig {
                alef_weight: a,
                author_weight: p,
                ..Default::default()
            };
            assert!(matches!(blend_scores(&alef, &[None], &cfg), Err(Error::Config(_))));
        }
        assert!(blend_scores(&alef, &[], &BlendConfig::default()).is_err());
    }

    #[test]
    fn randomize_fills_below_minimum() {
        let s = ScoreVector::new(vec![0.5, 0.2, 0.0, 0.0]);
        let r = randomize_unranked(&s, 9);
        assert_eq!(r.filled, 2);
        let out = r.scores.as_slice();
        assert_eq!(&out[..2], &[0.5, 0.2]);
        assert!(out[2..].iter().all(|&x| x > 0.0 && x < 0.1998));
        assert_eq!(r.scores.coverage(), 1.0);
        assert_eq!(randomize_unranked(&s, 9), r);
        assert_ne!(randomize_unranked(&s, 10).scores, r.scores);
    }

    #[test]
    fn randomize_all_zero_is_noop() {
        let s = ScoreVector::zeros(3);
        let r = randomize_unranked(&s, 1);
        assert_eq!(r.ceiling, None);
        assert_eq!(r.scores, s);
    }

    #[test]
    fn blend_with_randomize_flag() {
        let alef = ScoreVector::new(vec![0.3, 0.0, 0.0]);
        let cfg = BlendConfig {
            randomize_unranked: true,
            seed: 3,
            ..Default::default()
        };
        let s = blend_scores(&alef, &[None, Some(0.1), None], &cfg).unwrap();
        assert_eq!(&s.as_slice()[..2], &[0.3, 0.1]);
        assert!(s.as_slice()[2] < 0.0999 && s.as_slice()[2] > 0.0);
    }

    #[test]
    fn sweep_identity_and_argmax() {
        let alef = ScoreVector::new(vec![0.3, 0.5, 0.2, 0.0]);
        let pa = [Some(0.1), Some(0.2), Some(0.6), Some(0.05)];
        let j = JudgmentSet::new([(1, 0), (2, 0), (0, 3)].map(|(a, b)| (NodeId::new(a), NodeId::new(b))));
        let r = weight_sweep(&alef, &pa, &j, &[(1.0, 0.0)]).unwrap();
        let direct = pairwise_performance(alef.as_slice(), &j).unwrap();
        assert_eq!(r.entries[0].report, direct);

        let r = weight_sweep(&alef, &pa, &j, &[(1.0, 0.0), (0.5, 0.5), (0.0, 1.0)]).unwrap();
        let perf: Vec<f64> = r.entries.iter().map(|e| e.report.performance).collect();
        // alef: 1>0 yes, 2>0 no, 0>3 yes; pa-only: 1>0 yes, 2>0 yes, 0>3 yes
        assert_eq!(perf[0], 2.0 / 3.0);
        assert_eq!(perf[1], 1.0);
        assert_eq!(perf[2], 1.0);
        assert_eq!(r.best, 1);
        assert!(weight_sweep(&alef, &pa, &j, &[]).is_err());
    }
}
