//! Exact quasi-polynomial interpolation with held-out verification, plus
//! piecewise polynomials in the scaled variable c.

use num::rational::BigRational;
use num::{BigInt, Zero};

use crate::error::{Error, Result};

/// A quasi-polynomial of period r: one exact-rational coefficient vector
/// (ascending degree) per residue class, with classes that received no
/// samples left unpopulated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: usize,
    var: String,
    classes: Vec<Option<Vec<BigRational>>>,
}

fn trim(mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

impl QuasiPolynomial {
    pub fn new(
        period: usize,
        var: impl Into<String>,
        classes: Vec<Option<Vec<BigRational>>>,
    ) -> Result<Self> {
        if period == 0 || classes.len() != period {
            return Err(Error::Domain(
                "period must be positive and match the class count".into(),
            ));
        }
        if classes.iter().all(Option::is_none) {
            return Err(Error::Domain("at least one residue class required".into()));
        }
        Ok(QuasiPolynomial {
            period,
            var: var.into(),
            classes: classes.into_iter().map(|c| c.map(trim)).collect(),
        })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    pub fn class(&self, residue: usize) -> Option<&[BigRational]> {
        self.classes[residue % self.period].as_deref()
    }

    /// Maximum polynomial degree over the populated residue classes.
    pub fn degree(&self) -> usize {
        self.classes
            .iter()
            .flatten()
            .map(|c| c.len() - 1)
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, v: u64) -> Result<BigRational> {
        let class = self.classes[(v % self.period as u64) as usize]
            .as_ref()
            .ok_or_else(|| {
                Error::Domain(format!(
                    "residue class {} mod {} holds no samples",
                    v % self.period as u64,
                    self.period
                ))
            })?;
        Ok(eval_poly(class, v))
    }

    /// Coefficient of the top-degree term in each populated class.
    pub fn leading_coefficients(&self) -> Vec<Option<BigRational>> {
        let d = self.degree();
        self.classes
            .iter()
            .map(|c| {
                c.as_ref()
                    .map(|c| c.get(d).cloned().unwrap_or_else(BigRational::zero))
            })
            .collect()
    }
}

fn eval_poly(coeffs: &[BigRational], v: u64) -> BigRational {
    let v = BigRational::from_integer(BigInt::from(v));
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &v + c;
    }
    acc
}

/// Exact interpolation per residue class. Each populated class needs at
/// least degree + 2 samples: degree + 1 to interpolate and the rest held
/// out; any held-out sample the fit fails to reproduce is a fit failure
/// carrying the residual.
pub fn fit_quasi_polynomial(
    samples: &[(u64, BigRational)],
    degree: usize,
    period: usize,
) -> Result<QuasiPolynomial> {
    if period == 0 {
        return Err(Error::Domain("period must be positive".into()));
    }
    let mut by_class: Vec<Vec<(u64, BigRational)>> = vec![Vec::new(); period];
    for (v, value) in samples {
        by_class[(v % period as u64) as usize].push((*v, value.clone()));
    }
    let mut classes = Vec::with_capacity(period);
    for (residue, mut group) in by_class.into_iter().enumerate() {
        if group.is_empty() {
            classes.push(None);
            continue;
        }
        group.sort_by_key(|(v, _)| *v);
        if group.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Domain(format!(
                "duplicate sample point in residue class {residue}"
            )));
        }
        if group.len() < degree + 2 {
            return Err(Error::InsufficientSamples(format!(
                "residue class {residue} has {} samples; degree {degree} needs {}",
                group.len(),
                degree + 2
            )));
        }
        let coeffs = interpolate(&group[..degree + 1]);
        for (v, value) in &group[degree + 1..] {
            let predicted = eval_poly(&coeffs, *v);
            if &predicted != value {
                return Err(Error::FitFailure(format!(
                    "held-out sample at {v} (class {residue}) has residual {}; \
                     the degree/period hypothesis is wrong",
                    value - predicted
                )));
            }
        }
        classes.push(Some(coeffs));
    }
    QuasiPolynomial::new(period, "v", classes)
}

/// Newton divided differences expanded to monomial coefficients.
fn interpolate(points: &[(u64, BigRational)]) -> Vec<BigRational> {
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(v, _)| BigRational::from_integer(BigInt::from(*v)))
        .collect();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, f)| f.clone()).collect();
    for level in 1..dd.len() {
        for i in (level..dd.len()).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            dd[i] = num / den;
        }
    }
    let mut coeffs = vec![BigRational::zero(); dd.len()];
    let mut basis = vec![BigRational::zero(); dd.len()];
    basis[0] = BigRational::from_integer(BigInt::from(1));
    let mut basis_len = 1;
    for (i, d) in dd.iter().enumerate() {
        for (c, b) in coeffs.iter_mut().zip(basis.iter().take(basis_len)) {
            *c += d * b;
        }
        if i + 1 < dd.len() {
            for j in (0..=basis_len).rev() {
                let lower = if j > 0 {
                    basis[j - 1].clone()
                } else {
                    BigRational::zero()
                };
                let cur = if j < basis_len {
                    basis[j].clone()
                } else {
                    BigRational::zero()
                };
                basis[j] = lower - &xs[i] * cur;
            }
            basis_len += 1;
        }
    }
    trim(coeffs)
}

/// Polynomial pieces over closed rational intervals in c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    pieces: Vec<(BigRational, BigRational, Vec<BigRational>)>,
}

impl PiecewisePolynomial {
    pub fn new(mut pieces: Vec<(BigRational, BigRational, Vec<BigRational>)>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Domain("at least one piece required".into()));
        }
        pieces.sort_by(|a, b| a.0.cmp(&b.0));
        for (lo, hi, _) in &pieces {
            if lo > hi {
                return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
            }
        }
        for w in pieces.windows(2) {
            let (_, hi, left) = &w[0];
            let (lo, _, right) = &w[1];
            if lo < hi {
                return Err(Error::Domain(format!(
                    "pieces overlap beyond an endpoint near c = {lo}"
                )));
            }
            if lo == hi && eval_rat_poly(left, lo) != eval_rat_poly(right, lo) {
                return Err(Error::Domain(format!(
                    "pieces disagree at the shared endpoint c = {lo}"
                )));
            }
        }
        Ok(PiecewisePolynomial { pieces })
    }

    pub fn evaluate(&self, c: &BigRational) -> Option<BigRational> {
        self.pieces
            .iter()
            .find(|(lo, hi, _)| lo <= c && c <= hi)
            .map(|(_, _, coeffs)| eval_rat_poly(coeffs, c))
    }
}

fn eval_rat_poly(coeffs: &[BigRational], c: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for v in coeffs.iter().rev() {
        acc = acc * c + v;
    }
    acc
}
