//! Monte Carlo estimation of the gamma integral representations: uniform
//! sampling of the free trapezoid coordinates (rows k..2k symplectic,
//! k..2k-1 orthogonal), delta resolution of the two pinned coordinates,
//! rejection on the interlacing indicator, and the Vandermonde weight on
//! the row-k coordinates.

use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closed::barnes_g;
use crate::error::{Error, Result};
use crate::Ensemble;

const BATCH: u64 = 16_384;

/// A Monte Carlo estimate with its standard error; `degenerate` flags a
/// run in which no sample was accepted, with estimate pinned to 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub accepted: u64,
    pub degenerate: bool,
}

/// Estimates gamma(c) by rejection sampling of the delta-constrained
/// integral. Deterministic for a fixed seed regardless of worker count:
/// samples are drawn in fixed-size batches on independent counter-mode
/// streams and merged in batch order.
pub fn gamma_mc_integral(
    ensemble: Ensemble,
    k: usize,
    c: f64,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    if ensemble == Ensemble::Orthogonal && k == 1 {
        return Err(Error::Domain(
            "the orthogonal k = 1 region is degenerate: both delta constraints pin the same coordinate".into(),
        ));
    }
    if !c.is_finite() || c <= 0.0 || c >= k as f64 {
        return Err(Error::Domain(format!(
            "c must lie strictly inside (0, {k}), got {c}"
        )));
    }
    if samples < 1_000 {
        return Err(Error::InsufficientSamples(format!(
            "at least 1000 samples required, got {samples}"
        )));
    }

    let top = match ensemble {
        Ensemble::Symplectic => 2 * k,
        Ensemble::Orthogonal => 2 * k - 1,
    };
    let row_lens: Vec<usize> = (k..=top).collect();
    let prefactor = {
        let g = barnes_g(k as u64).to_f64().ok_or_else(|| {
            Error::Domain(format!("Barnes value for k = {k} exceeds double range"))
        })?;
        match ensemble {
            Ensemble::Symplectic => (2.0f64).powi(-(2 * k as i32) + 1) / g,
            Ensemble::Orthogonal => 2.0 / g,
        }
    };

    let n_batches = samples.div_ceil(BATCH);
    let stats: Vec<(f64, f64, u64)> = (0..n_batches)
        .into_par_iter()
        .map(|b| {
            let batch_samples = BATCH.min(samples - b * BATCH);
            run_batch(ensemble, c, &row_lens, seed, b, batch_samples)
        })
        .collect();
    let (sum, sumsq, accepted) = stats
        .into_iter()
        .fold((0.0f64, 0.0f64, 0u64), |(s, s2, a), (bs, bs2, ba)| {
            (s + bs, s2 + bs2, a + ba)
        });

    if accepted == 0 {
        return Ok(McEstimate {
            estimate: 0.0,
            stderr: 0.0,
            samples,
            accepted: 0,
            degenerate: true,
        });
    }
    let m = samples as f64;
    let mean = sum / m;
    let var = ((sumsq - m * mean * mean) / (m - 1.0)).max(0.0);
    Ok(McEstimate {
        estimate: prefactor * mean,
        stderr: prefactor * (var / m).sqrt(),
        samples,
        accepted,
        degenerate: false,
    })
}

fn run_batch(
    ensemble: Ensemble,
    c: f64,
    row_lens: &[usize],
    seed: u64,
    batch: u64,
    batch_samples: u64,
) -> (f64, f64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    let mut rows: Vec<Vec<f64>> = row_lens.iter().map(|&l| vec![0.0; l]).collect();
    let last = rows.len() - 1;
    let (mut sum, mut sumsq, mut accepted) = (0.0f64, 0.0f64, 0u64);

    for _ in 0..batch_samples {
        for (t, row) in rows.iter_mut().enumerate() {
            for (i, v) in row.iter_mut().enumerate() {
                let resolved = i == 0 && (t == 0 || t == last);
                if !resolved {
                    *v = rng.random::<f64>();
                }
            }
        }
        rows[0][0] = c - rows[0][1..].iter().sum::<f64>();
        rows[last][0] = match ensemble {
            Ensemble::Symplectic => 2.0 * c - rows[last][1..].iter().sum::<f64>(),
            Ensemble::Orthogonal => {
                c - rows[last]
                    .iter()
                    .enumerate()
                    .skip(2)
                    .filter(|(i, _)| i % 2 == 0)
                    .map(|(_, v)| v)
                    .sum::<f64>()
            }
        };

        if accept(&rows, last) {
            let w = vandermonde(&rows[0]);
            sum += w;
            sumsq += w * w;
            accepted += 1;
        }
    }
    (sum, sumsq, accepted)
}

fn accept(rows: &[Vec<f64>], last: usize) -> bool {
    for t in [0, last] {
        let v = rows[t][0];
        if !(0.0..=1.0).contains(&v) {
            return false;
        }
    }
    for t in 0..last {
        let (lo, hi) = (&rows[t], &rows[t + 1]);
        for r in 0..lo.len() {
            if !(hi[r + 1] <= lo[r] && lo[r] <= hi[r]) {
                return false;
            }
        }
    }
    true
}

fn vandermonde(row: &[f64]) -> f64 {
    let mut w = 1.0;
    for i in 0..row.len() {
        for j in i + 1..row.len() {
            w *= row[i] - row[j];
        }
    }
    w
}
