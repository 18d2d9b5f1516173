//! The two variance computations of the arithmetic side, each paired
//! with its random-matrix prediction: the sector variance of divisor
//! sums in short intervals of the S-line, and the variance of divisor
//! sums over quadratic residue classes mod a prime polynomial.

use num::rational::Ratio;
use num::{BigInt, ToPrimitive};

use momentlab_core::error::{Error, Result};
use momentlab_core::ssyt::i_moment;
use momentlab_core::Ensemble;

use crate::characters::super_even_characters;
use crate::divisor::divisor_table;
use crate::lfunc::{m0_from_tally, sector_tally};
use crate::poly::{monic_irreducibles, require_odd_prime, FqPoly};
use crate::sector::sector_group;

/// Variance over sectors of N(v) = sum_{f in M_n, f(0) != 0, U(f) = v}
/// d_l(f) (1 + chi_2(f))/2, together with the exact character-sum right
/// side (1/4q^{2 kappa}) sum_{Xi != Xi_0} |M_0(n; d_l Xi) +
/// M_0(n; d_l Xi chi_2)|^2, both M_0 terms retained.
pub fn sector_variance(q: u64, k: usize, ell: usize, n: usize) -> Result<(f64, f64)> {
    let group = sector_group(q, k)?;
    let chars = super_even_characters(&group)?;
    let tally = sector_tally(&group, ell, n)?;

    let order = group.order() as f64;
    let counts: Vec<u64> = tally.plus.clone();
    let mean = counts.iter().sum::<u64>() as f64 / order;
    let variance = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - mean;
            d * d
        })
        .sum::<f64>()
        / order;

    let mut rhs = 0.0f64;
    for xi in &chars {
        if xi.trivial {
            continue;
        }
        let both = m0_from_tally(&tally, xi, false) + m0_from_tally(&tally, xi, true);
        rhs += both.norm_sqr();
    }
    rhs /= 4.0 * order * order;

    Ok((variance, rhs))
}

/// The mean of N(v) over sectors, exactly: (1/q^kappa) sum over f of
/// d_l(f) (1 + chi_2(f))/2, enumerated without any sector bucketing.
pub fn sector_mean(q: u64, k: usize, ell: usize, n: usize) -> Result<Ratio<BigInt>> {
    require_odd_prime(q)?;
    let table = divisor_table(q, ell, n)?;
    let mut total = 0u64;
    for idx in 0..q.pow(n as u32) {
        let f = FqPoly::monic_from_index(q, n, idx);
        let sign = crate::divisor::chi2_scalar(q, f.constant_term());
        if sign == 0 {
            continue;
        }
        if sign > 0 {
            total += table.get_by_index(n, idx);
        }
    }
    let kappa = (k / 2) as u32;
    Ok(Ratio::new(
        BigInt::from(total),
        BigInt::from(q.pow(kappa)),
    ))
}

/// Squared deviations |S(P) - half the full divisor sum|^2, one exact
/// rational per monic irreducible P of degree 2g + 1.
pub fn qr_deviation_squares(
    q: u64,
    g: usize,
    k: usize,
    n: usize,
) -> Result<Vec<Ratio<BigInt>>> {
    require_odd_prime(q)?;
    if n > 2 * g * k {
        return Err(Error::Domain(format!(
            "the quadratic-residue variance needs n <= 2gk, got n = {n} with 2gk = {}",
            2 * g * k
        )));
    }
    let primes = monic_irreducibles(q, 2 * g + 1)?;
    let table = divisor_table(q, k, n)?;
    let euler_exp = ((q as u128).pow((2 * g + 1) as u32) - 1) / 2;
    let one = FqPoly::one(q);
    let mut out = Vec::with_capacity(primes.len());
    for p in &primes {
        let mut square_sum = 0u64;
        let mut full_sum = 0u64;
        for idx in 0..q.pow(n as u32) {
            let f = FqPoly::monic_from_index(q, n, idx);
            let r = f.rem(p)?;
            if r.is_zero() {
                continue;
            }
            let weight = table.get_by_index(n, idx);
            full_sum += weight;
            if r.pow_mod(euler_exp, p)? == one {
                square_sum += weight;
            }
        }
        let twice_dev = BigInt::from(2 * square_sum as i64 - full_sum as i64);
        out.push(Ratio::new(&twice_dev * &twice_dev, BigInt::from(4)));
    }
    Ok(out)
}

/// (1/#P_{2g+1}) sum_P |S(P) - half sum|^2 as a double.
pub fn qr_variance(q: u64, g: usize, k: usize, n: usize) -> Result<f64> {
    let devs = qr_deviation_squares(q, g, k, n)?;
    let count = devs.len();
    let total: Ratio<BigInt> = devs.into_iter().sum();
    let mean = total / Ratio::from_integer(BigInt::from(count as u64));
    mean.to_f64()
        .ok_or_else(|| Error::Domain("variance exceeds double range".into()))
}

/// Which arithmetic variance to sweep against its matrix-model limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareSide {
    /// Sector variance at modulus exponent k with divisor depth l;
    /// prediction q^n / (4 q^kappa) times the orthogonal moment at
    /// N = kappa - 1.
    Sectors { k: usize, ell: usize },
    /// Quadratic-residue variance with irreducibles of degree 2g + 1 and
    /// divisor depth k; prediction q^n / 4 times the symplectic moment
    /// at N = g.
    QuadraticResidues { g: usize, k: usize },
}

/// One row of the q-sweep report.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub q: u64,
    pub empirical: f64,
    pub predicted: f64,
    pub ratio: f64,
    /// Right side of the exact character identity divided by the
    /// enumerated variance; sector rows only.
    pub identity_ratio: Option<f64>,
}

/// Tabulates the arithmetic variance against the random-matrix
/// prediction for each listed field size.
pub fn rmt_compare(q_list: &[u64], side: CompareSide, n: usize) -> Result<Vec<CompareRow>> {
    let mut rows = Vec::with_capacity(q_list.len());
    for &q in q_list {
        let (empirical, predicted, identity_ratio) = match side {
            CompareSide::Sectors { k, ell } => {
                let kappa = k / 2;
                if kappa < 2 {
                    return Err(Error::Domain(
                        "the sector prediction needs kappa >= 2, so k >= 4".into(),
                    ));
                }
                let (variance, rhs) = sector_variance(q, k, ell, n)?;
                let moment = i_moment(Ensemble::Orthogonal, ell, n, kappa - 1)
                    .value
                    .to_f64()
                    .ok_or_else(|| Error::Domain("moment exceeds double range".into()))?;
                let predicted = (q as f64).powi(n as i32) / (4.0 * (q as f64).powi(kappa as i32))
                    * moment;
                let identity = if variance > 0.0 {
                    Some(rhs / variance)
                } else {
                    None
                };
                (variance, predicted, identity)
            }
            CompareSide::QuadraticResidues { g, k } => {
                let variance = qr_variance(q, g, k, n)?;
                let moment = i_moment(Ensemble::Symplectic, k, n, g)
                    .value
                    .to_f64()
                    .ok_or_else(|| Error::Domain("moment exceeds double range".into()))?;
                let predicted = (q as f64).powi(n as i32) / 4.0 * moment;
                (variance, predicted, None)
            }
        };
        rows.push(CompareRow {
            q,
            empirical,
            predicted,
            ratio: empirical / predicted,
            identity_ratio,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_zero_quadratic_residue_deviations_are_constant() {
        let devs = qr_deviation_squares(3, 1, 1, 0).unwrap();
        let quarter = Ratio::new(BigInt::from(1), BigInt::from(4));
        assert!(!devs.is_empty());
        for dev in &devs {
            assert_eq!(dev, &quarter);
        }
        assert_eq!(qr_variance(3, 1, 1, 0).unwrap(), 0.25);
    }

    #[test]
    fn out_of_range_weights_are_rejected() {
        assert!(matches!(
            qr_variance(3, 1, 1, 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sector_mean_matches_the_bucketed_total() {
        let (q, k, ell, n) = (3u64, 4usize, 2usize, 2usize);
        let group = sector_group(q, k).unwrap();
        let tally = sector_tally(&group, ell, n).unwrap();
        let bucketed: u64 = tally.plus.iter().sum();
        let mean = sector_mean(q, k, ell, n).unwrap();
        assert_eq!(
            mean,
            Ratio::new(BigInt::from(bucketed), BigInt::from(9u64))
        );
    }
}
