//! Secular coefficients: det(I + Ux) = sum_j Sc_j(U) x^j.
//!
//! Two independent routes are implemented. The primary one expands the
//! product over eigenvalues (LAPACK zgeev); the fallback runs the
//! Faddeev-LeVerrier recurrence directly on the matrix, which guards
//! against eigensolver quality issues near degenerate spectra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use momentlab_core::error::{Error, Result};

use crate::sample::HaarSample;

/// Tolerance on imaginary residues of coefficients that must be real.
const IMAG_TOL: f64 = 1e-8;

#[link(name = "lapack")]
extern "C" {
    fn zgeev_(
        jobvl: *const u8,
        jobvr: *const u8,
        n: *const i32,
        a: *mut Complex64,
        lda: *const i32,
        w: *mut Complex64,
        vl: *mut Complex64,
        ldvl: *const i32,
        vr: *mut Complex64,
        ldvr: *const i32,
        work: *mut Complex64,
        lwork: *const i32,
        rwork: *mut f64,
        info: *mut i32,
    );
}

/// Eigenvalues of the sample matrix (column-major copy handed to zgeev,
/// eigenvectors not requested).
pub fn eigenvalues(sample: &HaarSample) -> Result<Vec<Complex64>> {
    let n = sample.dim as i32;
    let mut a: Vec<Complex64> = sample.matrix.as_slice().to_vec();
    let mut w = vec![Complex64::new(0.0, 0.0); sample.dim];
    let mut dummy = [Complex64::new(0.0, 0.0)];
    let lwork = 4 * n;
    let mut work = vec![Complex64::new(0.0, 0.0); lwork as usize];
    let mut rwork = vec![0.0f64; 2 * sample.dim];
    let mut info = 0i32;
    let one = 1i32;
    unsafe {
        zgeev_(
            b"N".as_ptr(),
            b"N".as_ptr(),
            &n,
            a.as_mut_ptr(),
            &n,
            w.as_mut_ptr(),
            dummy.as_mut_ptr(),
            &one,
            dummy.as_mut_ptr(),
            &one,
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Consistency(format!(
            "eigenvalue solver returned info = {info}"
        )));
    }
    Ok(w)
}

/// Conjugate-pair defect of a self-dual spectrum: how far the multiset of
/// eigenvalues is from being closed under complex conjugation.
pub fn conjugate_pairing_defect(eigenvalues: &[Complex64]) -> f64 {
    let mut remaining: Vec<Complex64> = eigenvalues.to_vec();
    let mut worst = 0.0f64;
    while let Some(lambda) = remaining.pop() {
        if lambda.im.abs() < IMAG_TOL {
            continue;
        }
        let target = lambda.conj();
        let (best_idx, best_dist) = remaining
            .iter()
            .enumerate()
            .map(|(i, mu)| (i, (mu - target).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap_or((0, f64::INFINITY));
        worst = worst.max(best_dist);
        if best_dist.is_finite() {
            remaining.swap_remove(best_idx);
        }
    }
    worst
}

/// Secular coefficients via the eigenvalue product expansion
/// prod_i (1 + lambda_i x), accumulated one linear factor at a time.
/// Sc_0 is exactly 1; every higher coefficient must be real to within
/// the imaginary-residue tolerance.
pub fn secular_coeffs(sample: &HaarSample) -> Result<Vec<f64>> {
    let lambdas = eigenvalues(sample)?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); sample.dim + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    for (used, lambda) in lambdas.iter().enumerate() {
        for j in (0..=used).rev() {
            let shift = coeffs[j] * lambda;
            coeffs[j + 1] += shift;
        }
    }
    realize(&coeffs)
}

/// Secular coefficients via the Faddeev-LeVerrier recurrence on the
/// characteristic polynomial of U: with det(tI - U) = t^d + c_1 t^{d-1}
/// + ... + c_d, the coefficient of x^m in det(I + Ux) is (-1)^m c_m.
pub fn secular_coeffs_char_poly(sample: &HaarSample) -> Result<Vec<f64>> {
    let dim = sample.dim;
    let u = &sample.matrix;
    let identity = DMatrix::<Complex64>::identity(dim, dim);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); dim + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    let mut m = u.clone();
    let mut c = -m.trace();
    coeffs[1] = -c;
    for j in 2..=dim {
        m = u * (&m + &identity * c);
        c = -m.trace() / (j as f64);
        coeffs[j] = if j % 2 == 0 { c } else { -c };
    }
    realize(&coeffs)
}

fn realize(coeffs: &[Complex64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(coeffs.len());
    for (j, z) in coeffs.iter().enumerate() {
        if z.im.abs() > IMAG_TOL {
            return Err(Error::Consistency(format!(
                "secular coefficient {j} has imaginary residue {}",
                z.im
            )));
        }
        out.push(z.re);
    }
    out[0] = 1.0;
    Ok(out)
}

/// Largest violation of the functional symmetry Sc_j = det(U) Sc_{dim-j},
/// the coefficient form of det(I + Ux) = x^dim det(U) det(I + U^{-1}/x)
/// on a self-dual spectrum.
pub fn functional_symmetry_defect(sc: &[f64], det: f64) -> f64 {
    let dim = sc.len() - 1;
    (0..=dim)
        .map(|j| (sc[j] - det * sc[dim - j]).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use momentlab_core::Ensemble;

    fn wrap(m: DMatrix<Complex64>) -> HaarSample {
        HaarSample::from_matrix(Ensemble::Orthogonal, m).unwrap()
    }

    #[test]
    fn identity_dim_3_gives_binomials() {
        let s = wrap(DMatrix::identity(3, 3));
        assert_eq!(secular_coeffs(&s).unwrap(), vec![1.0, 3.0, 3.0, 1.0]);
        assert_eq!(
            secular_coeffs_char_poly(&s).unwrap(),
            vec![1.0, 3.0, 3.0, 1.0]
        );
    }

    #[test]
    fn negated_identity_alternates_signs() {
        let s = wrap(DMatrix::<Complex64>::identity(3, 3) * Complex64::new(-1.0, 0.0));
        let sc = secular_coeffs(&s).unwrap();
        assert_eq!(sc, vec![1.0, -3.0, 3.0, -1.0]);
    }

    #[test]
    fn conjugate_rotation_pair_drops_the_middle_coefficient() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
        ]));
        let sc = secular_coeffs(&wrap(m)).unwrap();
        assert_eq!(sc.len(), 3);
        assert_eq!(sc[0], 1.0);
        assert!(sc[1].abs() < 1e-12);
        assert!((sc[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unpaired_rotation_is_rejected_as_complex() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![Complex64::new(
            0.0, 1.0,
        )]));
        assert!(matches!(
            secular_coeffs(&wrap(m)),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn pairing_defect_flags_a_broken_spectrum() {
        let paired = [Complex64::new(0.3, 0.6), Complex64::new(0.3, -0.6)];
        assert!(conjugate_pairing_defect(&paired) < 1e-12);
        let broken = [Complex64::new(0.3, 0.6), Complex64::new(0.1, -0.2)];
        assert!(conjugate_pairing_defect(&broken) > 0.1);
    }
}
