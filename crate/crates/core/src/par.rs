//! Deterministic data-parallel helpers.
//!
//! Every reduction here splits its input into fixed-size chunks that do not
//! depend on the thread count, sums each chunk left to right and then folds
//! the chunk sums left to right. Serial and parallel builds therefore produce
//! bit-identical results.

/// Chunk length used by all reductions. Changing it changes low-order bits.
pub(crate) const CHUNK: usize = 4096;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Fills `out[i] = f(i)` for every index.
pub(crate) fn fill_indexed<F>(out: &mut [f64], f: F)
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    out.par_chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(c, chunk)| {
            let base = c * CHUNK;
            for (j, slot) in chunk.iter_mut().enumerate() {
                *slot = f(base + j);
            }
        });

    #[cfg(not(feature = "parallel"))]
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = f(i);
    }
}

/// Sum with a fixed association order, independent of thread count.
pub(crate) fn stable_sum(xs: &[f64]) -> f64 {
    #[cfg(feature = "parallel")]
    let partial: Vec<f64> = xs
        .par_chunks(CHUNK)
        .map(|c| c.iter().fold(0.0, |acc, &x| acc + x))
        .collect();

    #[cfg(not(feature = "parallel"))]
    let partial: Vec<f64> = xs
        .chunks(CHUNK)
        .map(|c| c.iter().fold(0.0, |acc, &x| acc + x))
        .collect();

    partial.iter().fold(0.0, |acc, &x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_sum_matches_chunked_serial_fold() {
        let xs: Vec<f64> = (0..20_000).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        let expected = xs
            .chunks(CHUNK)
            .map(|c| c.iter().fold(0.0, |a, &x| a + x))
            .fold(0.0, |a, x| a + x);
        assert_eq!(stable_sum(&xs).to_bits(), expected.to_bits());
        assert_eq!(stable_sum(&[]), 0.0);
    }

    #[test]
    fn fill_indexed_covers_every_slot() {
        let mut out = vec![0.0; 10_001];
        fill_indexed(&mut out, |i| i as f64);
        assert!(out.iter().enumerate().all(|(i, &x)| x == i as f64));
    }
}
