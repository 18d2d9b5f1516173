//! Monte Carlo estimation of the moment integrals from Haar samples.
//!
//! The per-sample statistic is the squared x^n coefficient of the k-th
//! power of the secular polynomial, which equals the composition sum
//! |sum_{j_1+...+j_k=n} prod_i Sc_{j_i}|^2; orthogonal values carry the
//! mass-2 factor.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use momentlab_core::error::{Error, Result};
use momentlab_core::Ensemble;

use crate::sample::sample;
use crate::secular::secular_coeffs;

const BATCH: u64 = 256;

/// A Monte Carlo moment estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmtEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Estimates I(n;N) by averaging the squared coefficient statistic over
/// Haar samples. Deterministic for a fixed seed regardless of worker
/// count: samples are drawn in fixed-size batches on independent
/// counter-mode streams and merged in batch order.
pub fn estimate_i(
    ensemble: Ensemble,
    k: usize,
    n: usize,
    n_cap: usize,
    samples: u64,
    seed: u64,
) -> Result<RmtEstimate> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    if n_cap == 0 {
        return Err(Error::Domain("the cap parameter N must be positive".into()));
    }
    if samples < 1_000 {
        return Err(Error::InsufficientSamples(format!(
            "at least 1000 samples required, got {samples}"
        )));
    }
    let mass = match ensemble {
        Ensemble::Symplectic => 1.0,
        Ensemble::Orthogonal => 2.0,
    };

    let n_batches = samples.div_ceil(BATCH);
    let stats: Vec<Result<(f64, f64)>> = (0..n_batches)
        .into_par_iter()
        .map(|b| {
            let batch_samples = BATCH.min(samples - b * BATCH);
            run_batch(ensemble, k, n, n_cap, mass, seed, b, batch_samples)
        })
        .collect();
    let mut sum = 0.0f64;
    let mut sumsq = 0.0f64;
    for stat in stats {
        let (bs, bs2) = stat?;
        sum += bs;
        sumsq += bs2;
    }
    let m = samples as f64;
    let mean = sum / m;
    let var = ((sumsq - m * mean * mean) / (m - 1.0)).max(0.0);
    Ok(RmtEstimate {
        estimate: mean,
        stderr: (var / m).sqrt(),
        samples,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_batch(
    ensemble: Ensemble,
    k: usize,
    n: usize,
    n_cap: usize,
    mass: f64,
    seed: u64,
    batch: u64,
    batch_samples: u64,
) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    let (mut sum, mut sumsq) = (0.0f64, 0.0f64);
    for _ in 0..batch_samples {
        let s = sample(ensemble, n_cap, &mut rng)?;
        let sc = secular_coeffs(&s)?;
        let coeff = power_coeff(&sc, k, n);
        let value = mass * coeff * coeff;
        sum += value;
        sumsq += value * value;
    }
    Ok((sum, sumsq))
}

/// The x^n coefficient of (sum_j sc_j x^j)^k, by repeated truncated
/// polynomial multiplication.
pub fn power_coeff(sc: &[f64], k: usize, n: usize) -> f64 {
    let mut acc = vec![0.0f64; n + 1];
    acc[0] = 1.0;
    for _ in 0..k {
        let mut next = vec![0.0f64; n + 1];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &c) in sc.iter().enumerate().take(n + 1 - i) {
                next[i + j] += a * c;
            }
        }
        acc = next;
    }
    acc[n]
}

/// The same coefficient by direct enumeration of the compositions
/// j_1 + ... + j_k = n with every part at most dim; the independent
/// route for the convolution identity check.
pub fn composition_sum(sc: &[f64], k: usize, n: usize) -> f64 {
    fn rec(sc: &[f64], parts_left: usize, remaining: usize, acc: f64, total: &mut f64) {
        if parts_left == 0 {
            if remaining == 0 {
                *total += acc;
            }
            return;
        }
        for j in 0..=remaining.min(sc.len() - 1) {
            rec(sc, parts_left - 1, remaining - j, acc * sc[j], total);
        }
    }
    let mut total = 0.0;
    rec(sc, k, n, 1.0, &mut total);
    total
}

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_1(x) - F_2(x)|.
pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> f64 {
    let mut a = xs.to_vec();
    let mut b = ys.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j) = (0usize, 0usize);
    let mut worst = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        let f1 = i as f64 / a.len() as f64;
        let f2 = j as f64 / b.len() as f64;
        worst = worst.max((f1 - f2).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_coeff_matches_composition_sum_on_a_fixed_polynomial() {
        let sc = [1.0, 2.0, -0.5, 0.25];
        for k in 1..=4 {
            for n in 0..=6 {
                let a = power_coeff(&sc, k, n);
                let b = composition_sum(&sc, k, n);
                assert!((a - b).abs() < 1e-12, "k {k} n {n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn ks_statistic_on_identical_samples_is_zero() {
        let xs = [0.1, 0.4, 0.9, 1.3];
        assert_eq!(ks_two_sample(&xs, &xs), 0.0);
    }

    #[test]
    fn ks_statistic_on_disjoint_samples_is_one() {
        let xs = [0.0, 0.1, 0.2];
        let ys = [1.0, 1.1, 1.2];
        assert_eq!(ks_two_sample(&xs, &ys), 1.0);
    }

    #[test]
    fn small_sample_counts_are_rejected() {
        use momentlab_core::Ensemble;
        assert!(matches!(
            estimate_i(Ensemble::Symplectic, 1, 1, 1, 10, 0),
            Err(Error::InsufficientSamples(_))
        ));
    }

    #[test]
    fn estimates_are_deterministic_for_a_fixed_seed() {
        use momentlab_core::Ensemble;
        let a = estimate_i(Ensemble::Symplectic, 1, 1, 1, 1_000, 42).unwrap();
        let b = estimate_i(Ensemble::Symplectic, 1, 1, 1, 1_000, 42).unwrap();
        assert_eq!(a, b);
    }
}
