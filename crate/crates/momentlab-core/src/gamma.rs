//! Gamma extraction: admissible dilate schedules, exact quasi-polynomial
//! fits of lattice counts, and conversion of the leading coefficient to
//! the gamma normalization in the matrix-size variable.

use num::rational::BigRational;
use num::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{lattice_count, PolytopeModel};
use crate::quasi::{fit_quasi_polynomial, QuasiPolynomial};
use crate::Ensemble;

/// A completed lattice-count fit with its extracted gamma value. The fit
/// variable is N for the symplectic ensemble (dilate 2N) and M = 2N+1 for
/// the orthogonal ensemble (dilate M).
#[derive(Debug, Clone)]
pub struct GammaFit {
    pub ensemble: Ensemble,
    pub k: usize,
    pub c_num: u64,
    pub c_den: u64,
    pub fit: QuasiPolynomial,
    pub gamma: BigRational,
}

/// Degree of the moment in the fit variable: 2k^2+k-2 (symplectic) or
/// 2k^2-k-2 (orthogonal).
pub fn expected_degree(ensemble: Ensemble, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    match ensemble {
        Ensemble::Symplectic => Ok(2 * k * k + k - 2),
        Ensemble::Orthogonal => {
            if k < 2 {
                return Err(Error::Domain(
                    "the orthogonal k = 1 moment is identically 2 and has no gamma degree".into(),
                ));
            }
            Ok(2 * k * k - k - 2)
        }
    }
}

/// Quasi-period used when fitting in the ensemble's variable. Symplectic
/// admissible N form an arithmetic progression of step lcm(2, b)/2, and
/// the even top-row sublattice can introduce a parity term, so the period
/// is lcm(2, b); orthogonal counts are plain polynomials in M and period
/// 2 leaves every sample in the odd class.
pub fn fit_period(ensemble: Ensemble, c_den: u64) -> usize {
    match ensemble {
        Ensemble::Symplectic => num::integer::lcm(2, c_den) as usize,
        Ensemble::Orthogonal => 2,
    }
}

/// Exact fit samples (fit-variable value, moment) from lattice counts,
/// with `per_class` samples in each populated residue class of the fit
/// period. Orthogonal lattice counts are doubled so the fitted quantity
/// is the moment itself in both ensembles.
pub fn lattice_samples(
    ensemble: Ensemble,
    k: usize,
    c_num: u64,
    c_den: u64,
    per_class: usize,
) -> Result<Vec<(u64, BigRational)>> {
    if per_class == 0 {
        return Err(Error::Domain("per_class must be positive".into()));
    }
    let model = PolytopeModel::new(ensemble, k, c_num, c_den)?;
    let q = model.c_den;
    match ensemble {
        Ensemble::Symplectic => {
            let step = q / num::integer::gcd(q, 2);
            let mut out = Vec::with_capacity(2 * per_class);
            for j in 1..=2 * per_class as u64 {
                let n_var = j * step;
                let count = lattice_count(&model, 2 * n_var)?;
                out.push((n_var, BigRational::from_integer(BigInt::from(count))));
            }
            Ok(out)
        }
        Ensemble::Orthogonal => {
            if q % 2 == 0 {
                return Err(Error::Domain(format!(
                    "orthogonal dilates are odd, so the reduced denominator of c must be odd, got {q}"
                )));
            }
            let mut out = Vec::with_capacity(per_class);
            for s in 0..per_class as u64 {
                let m = q * (2 * s + 1);
                let count = lattice_count(&model, m)?;
                out.push((m, BigRational::from_integer(BigInt::from(count * 2u32))));
            }
            Ok(out)
        }
    }
}

/// Converts a fit's leading coefficient to gamma: symplectic fits are in
/// N so gamma = lead / 2^d; orthogonal fits are performed directly in
/// M = 2N+1 so gamma is the leading coefficient itself.
pub fn gamma_from_fit(
    ensemble: Ensemble,
    k: usize,
    _c_num: u64,
    _c_den: u64,
    fit: &QuasiPolynomial,
) -> Result<BigRational> {
    let d = expected_degree(ensemble, k)?;
    if fit.degree() != d {
        return Err(Error::Consistency(format!(
            "fit degree {} does not match the asymptotic degree {d} for {} k = {k}",
            fit.degree(),
            ensemble.name(),
        )));
    }
    let leads: Vec<BigRational> = fit.leading_coefficients().into_iter().flatten().collect();
    let first = leads
        .first()
        .cloned()
        .ok_or_else(|| Error::Consistency("fit has no populated residue class".into()))?;
    if leads.iter().any(|l| *l != first) {
        return Err(Error::Consistency(format!(
            "residue classes disagree in leading coefficient: {leads:?}"
        )));
    }
    match ensemble {
        Ensemble::Symplectic => {
            let two_d = BigRational::from_integer(BigInt::from(2u32).pow(d as u32));
            Ok(first / two_d)
        }
        Ensemble::Orthogonal => Ok(first),
    }
}

/// Full pipeline: generate lattice samples, fit at the asymptotic degree
/// with `expected_degree + 3` samples per class, and extract gamma.
pub fn gamma_lattice_fit(
    ensemble: Ensemble,
    k: usize,
    c_num: u64,
    c_den: u64,
) -> Result<GammaFit> {
    let d = expected_degree(ensemble, k)?;
    let model = PolytopeModel::new(ensemble, k, c_num, c_den)?;
    let samples = lattice_samples(ensemble, k, c_num, c_den, d + 3)?;
    let period = fit_period(ensemble, model.c_den);
    let var = match ensemble {
        Ensemble::Symplectic => "N",
        Ensemble::Orthogonal => "M",
    };
    let fit = fit_quasi_polynomial(&samples, d, period)?.with_var(var);
    let gamma = gamma_from_fit(ensemble, k, c_num, c_den, &fit)?;
    Ok(GammaFit {
        ensemble,
        k,
        c_num,
        c_den,
        fit,
        gamma,
    })
}
