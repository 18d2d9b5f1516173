//! Exact generating-function engine: assembles the bivariate moment series
//! from a binomial-entry determinant, a certified division by (y - x)^{k^2},
//! and closed-form binomial factor series.

use num::rational::BigRational;
use num::{BigInt, One, Zero};

use crate::closed::binomial;
use crate::error::{Error, Result};
use crate::series::{BivariatePoly, BivariateSeries, PolyMatrix};
use crate::Ensemble;

fn binom_rat(n: u64, r: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(binomial(n, r)))
}

/// The confluent alternant divided by (y - x)^{k^2}, with a flag recording
/// a vanishing determinant from duplicate exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluentAlternant {
    pub poly: BivariatePoly,
    pub vanished: bool,
}

/// Determinant of the 2k x 2k derivative matrix: rows are the (i-1)-st
/// derivatives of x^{alpha_j} for i = 1..k, then the same in y, divided
/// exactly by (y - x)^{k^2}. A non-exact division is a hard error.
pub fn confluent_alternant(k: usize, alphas: &[u64]) -> Result<ConfluentAlternant> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    if alphas.len() != 2 * k {
        return Err(Error::Domain(format!(
            "expected 2k = {} exponents, got {}",
            2 * k,
            alphas.len()
        )));
    }
    let mut sorted = alphas.to_vec();
    sorted.sort_unstable();
    let vanished = sorted.windows(2).any(|w| w[0] == w[1]);

    let mut rows = Vec::with_capacity(2 * k);
    for in_y in [false, true] {
        for i in 1..=k {
            let row: Vec<BivariatePoly> = alphas
                .iter()
                .map(|&alpha| derivative_monomial(alpha, i - 1, in_y))
                .collect();
            rows.push(row);
        }
    }
    let det = PolyMatrix::new(rows)?.determinant();
    let poly = det.div_y_minus_x_pow(k * k)?;
    Ok(ConfluentAlternant { poly, vanished })
}

/// The (order)-th derivative of x^alpha (or y^alpha) as a monomial.
fn derivative_monomial(alpha: u64, order: usize, in_y: bool) -> BivariatePoly {
    let order = order as u64;
    if alpha < order {
        return BivariatePoly::zero();
    }
    let mut coeff = BigRational::one();
    for m in 0..order {
        coeff *= BigRational::from_integer(BigInt::from(alpha - m));
    }
    let power = (alpha - order) as usize;
    if in_y {
        BivariatePoly::monomial(0, power, coeff)
    } else {
        BivariatePoly::monomial(power, 0, coeff)
    }
}

/// One matrix entry of the symplectic determinant formula: the pair of
/// binomial-weighted powers for column j and derivative order i - 1.
fn sym_entry(n_cap: usize, k: usize, i: usize, j: usize, in_y: bool) -> BivariatePoly {
    let (n2, k4) = (2 * n_cap as u64, 4 * k as u64);
    let (i, j) = (i as u64, j as u64);
    let hi_coeff = binom_rat(n2 + k4 + 1 - j, i - 1);
    let hi_pow = (n2 + k4 + 2 - j - i) as usize;
    let mut entry = monomial_in(hi_pow, hi_coeff, in_y);
    if j >= i {
        let lo_coeff = binom_rat(j - 1, i - 1);
        let lo_pow = (j - i) as usize;
        entry = entry.sub(&monomial_in(lo_pow, lo_coeff, in_y));
    }
    entry
}

/// One matrix entry of the orthogonal determinant formula. The full
/// orthogonal group splits into two special-orthogonal cosets; the coset with
/// negated variables flips the sign of the low-order term, so the series
/// needs both the minus-sign and the plus-sign determinant.
fn orth_entry(
    n_cap: usize,
    k: usize,
    i: usize,
    j: usize,
    in_y: bool,
    lo_plus: bool,
) -> BivariatePoly {
    let (n2, k4) = (2 * n_cap as u64, 4 * k as u64);
    let (i, j) = (i as u64, j as u64);
    let hi_coeff = binom_rat(n2 + k4 - j, i - 1);
    let hi_pow = (n2 + k4 - j - i + 1) as usize;
    let mut entry = monomial_in(hi_pow, hi_coeff, in_y);
    if j >= i {
        let lo_coeff = binom_rat(j - 1, i - 1);
        let lo_pow = (j - i) as usize;
        let lo = monomial_in(lo_pow, lo_coeff, in_y);
        entry = if lo_plus { entry.add(&lo) } else { entry.sub(&lo) };
    }
    entry
}

fn monomial_in(power: usize, coeff: BigRational, in_y: bool) -> BivariatePoly {
    if in_y {
        BivariatePoly::monomial(0, power, coeff)
    } else {
        BivariatePoly::monomial(power, 0, coeff)
    }
}

/// Series of (1 - x^2)^{-a}, (1 - y^2)^{-a}, or (1 - xy)^{-a} from the
/// closed-form binomial coefficients rather than repeated multiplication.
enum FactorVar {
    X2,
    Y2,
    Xy,
}

fn binomial_factor_series(var: FactorVar, a: u64, d_x: usize, d_y: usize) -> BivariateSeries {
    let mut s = BivariateSeries::zero(d_x, d_y);
    match var {
        FactorVar::X2 => {
            for l in 0..=(d_x / 2) as u64 {
                let c = if a == 0 {
                    if l == 0 {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                } else {
                    binom_rat(l + a - 1, a - 1)
                };
                s.set_coeff(2 * l as usize, 0, c);
            }
        }
        FactorVar::Y2 => {
            for l in 0..=(d_y / 2) as u64 {
                let c = if a == 0 {
                    if l == 0 {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                } else {
                    binom_rat(l + a - 1, a - 1)
                };
                s.set_coeff(0, 2 * l as usize, c);
            }
        }
        FactorVar::Xy => {
            for m in 0..=d_x.min(d_y) as u64 {
                let c = if a == 0 {
                    if m == 0 {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                } else {
                    binom_rat(m + a - 1, a - 1)
                };
                s.set_coeff(m as usize, m as usize, c);
            }
        }
    }
    s
}

/// The truncated moment generating series: coefficient (m, n) equals
/// J_moment(ensemble, k, m, n, N).
pub fn gen_series(
    ensemble: Ensemble,
    k: usize,
    n_cap: usize,
    d_x: usize,
    d_y: usize,
) -> Result<BivariateSeries> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let cap = (2 * n_cap + 1) * k;
    if d_x > cap || d_y > cap {
        return Err(Error::Domain(format!(
            "truncation orders ({d_x}, {d_y}) exceed (2N+1)k = {cap}"
        )));
    }

    let quotient = match ensemble {
        Ensemble::Symplectic => {
            let mut rows = Vec::with_capacity(2 * k);
            for in_y in [false, true] {
                for i in 1..=k {
                    let row: Vec<BivariatePoly> = (1..=2 * k)
                        .map(|j| sym_entry(n_cap, k, i, j, in_y))
                        .collect();
                    rows.push(row);
                }
            }
            let det = PolyMatrix::new(rows)?.determinant();
            det.div_y_minus_x_pow(k * k)?
        }
        Ensemble::Orthogonal => {
            let mut total = BivariatePoly::zero();
            for lo_plus in [false, true] {
                let mut rows = Vec::with_capacity(2 * k);
                for in_y in [false, true] {
                    for i in 1..=k {
                        let row: Vec<BivariatePoly> = (1..=2 * k)
                            .map(|j| orth_entry(n_cap, k, i, j, in_y, lo_plus))
                            .collect();
                        rows.push(row);
                    }
                }
                total = total.add(&PolyMatrix::new(rows)?.determinant());
            }
            total.div_y_minus_x_pow(k * k)?
        }
    };

    let square_exp = match ensemble {
        Ensemble::Symplectic => (k * (k + 1) / 2) as u64,
        Ensemble::Orthogonal => (k * (k - 1) / 2) as u64,
    };
    let k2 = (k * k) as u64;
    let mut series = BivariateSeries::from_poly(&quotient, d_x, d_y);
    series = series.mul(&binomial_factor_series(FactorVar::X2, square_exp, d_x, d_y));
    series = series.mul(&binomial_factor_series(FactorVar::Y2, square_exp, d_x, d_y));
    series = series.mul(&binomial_factor_series(FactorVar::Xy, k2, d_x, d_y));
    Ok(series)
}
