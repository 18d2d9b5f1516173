//! Character sums over monic strata: the twisted moments M_0 and the
//! L-polynomials L(u, Xi chi_2), whose coefficients are the depth-one
//! sums and whose roots all sit on the circle |u| = q^{-1/2}.

use num_complex::Complex64;

use momentlab_core::error::{Error, Result};

use crate::divisor::{chi2_scalar, divisor_table};
use crate::poly::FqPoly;
use crate::sector::SectorGroup;
use crate::characters::SuperEvenCharacter;

/// d_l-weighted counts of the monic stratum M_n, f(0) != 0, bucketed by
/// sector and by the sign of chi_2(f). Every character sum over M_n is a
/// linear functional of these two vectors.
#[derive(Debug, Clone)]
pub struct SectorTally {
    pub n: usize,
    pub ell: usize,
    pub plus: Vec<u64>,
    pub minus: Vec<u64>,
}

/// Tallies M_n once; the cost is one sector projection per monic
/// polynomial, after which every character is a cheap dot product.
pub fn sector_tally(group: &SectorGroup, ell: usize, n: usize) -> Result<SectorTally> {
    let q = group.q;
    let table = divisor_table(q, ell, n)?;
    let mut plus = vec![0u64; group.order()];
    let mut minus = vec![0u64; group.order()];
    for idx in 0..q.pow(n as u32) {
        let f = FqPoly::monic_from_index(q, n, idx);
        let sign = chi2_scalar(q, f.constant_term());
        if sign == 0 {
            continue;
        }
        let v = group.project(&f)?;
        let weight = table.get_by_index(n, idx);
        if sign > 0 {
            plus[v] += weight;
        } else {
            minus[v] += weight;
        }
    }
    Ok(SectorTally {
        n,
        ell,
        plus,
        minus,
    })
}

/// M_0 from a prepared tally.
pub fn m0_from_tally(
    tally: &SectorTally,
    xi: &SuperEvenCharacter,
    twist: bool,
) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for (v, value) in xi.values.iter().enumerate() {
        let weight = if twist {
            tally.plus[v] as f64 - tally.minus[v] as f64
        } else {
            tally.plus[v] as f64 + tally.minus[v] as f64
        };
        total += value * weight;
    }
    total
}

/// M_0(n; d_l Xi chi_2^[twist]) = sum over monic f of degree n with
/// f(0) != 0 of d_l(f) Xi(f) (chi_2(f) when twisted); Xi acts on f
/// through the sector projection, the H_k-coset route.
pub fn m0_sum(
    group: &SectorGroup,
    n: usize,
    ell: usize,
    xi: &SuperEvenCharacter,
    twist: bool,
) -> Result<Complex64> {
    Ok(m0_from_tally(&sector_tally(group, ell, n)?, xi, twist))
}

/// L(u, Xi chi_2) as a coefficient vector; computed out to degree k + 2
/// so the vanishing beyond the Swan conductor is an observed fact rather
/// than a truncation.
#[derive(Debug, Clone)]
pub struct LPolynomial {
    pub coeffs: Vec<Complex64>,
    /// The Swan conductor of the character, the claimed degree.
    pub degree: usize,
    /// Roots of the degree-d(Xi) truncation; empty for the trivial
    /// character or the untwisted sum.
    pub roots: Vec<Complex64>,
}

/// Builds the L-polynomial of Xi (twisted by chi_2 when `twist` is set)
/// and, for a twisted nontrivial character, enforces the degree-d(Xi)
/// cutoff and the root magnitudes q^{-1/2}.
pub fn l_polynomial(
    group: &SectorGroup,
    xi: &SuperEvenCharacter,
    twist: bool,
) -> Result<LPolynomial> {
    let k = group.k;
    let mut coeffs = Vec::with_capacity(k + 3);
    for n in 0..=k + 2 {
        let tally = sector_tally(group, 1, n)?;
        coeffs.push(m0_from_tally(&tally, xi, twist));
    }
    let degree = xi.swan;
    let mut roots = vec![];
    if twist && !xi.trivial {
        for (n, c) in coeffs.iter().enumerate().skip(degree + 1) {
            if c.norm() > 1e-8 {
                return Err(Error::Consistency(format!(
                    "L-coefficient {n} = {c} survives past the Swan conductor {degree}"
                )));
            }
        }
        if coeffs[degree].norm() < 1e-8 {
            return Err(Error::Consistency(format!(
                "L-polynomial drops below its claimed degree {degree}"
            )));
        }
        roots = durand_kerner(&coeffs[..=degree])?;
        let target = (group.q as f64).powf(-0.5);
        for root in &roots {
            if (root.norm() - target).abs() > 1e-6 {
                return Err(Error::Consistency(format!(
                    "L-root {root} has modulus {} instead of q^-1/2 = {target}",
                    root.norm()
                )));
            }
        }
    }
    Ok(LPolynomial {
        coeffs,
        degree,
        roots,
    })
}

/// Durand-Kerner simultaneous root iteration on a dense complex
/// polynomial given by ascending coefficients.
pub fn durand_kerner(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Ok(vec![]);
    }
    let lead = coeffs[d];
    if lead.norm() == 0.0 {
        return Err(Error::Domain(
            "root finding needs a nonzero leading coefficient".into(),
        ));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32 + 1)).collect();
    for _ in 0..500 {
        let mut shift = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-13 {
            return Ok(roots);
        }
    }
    Err(Error::Consistency(
        "root iteration failed to converge in 500 rounds".into(),
    ))
}
