//! Haar sampling on O(dim) and USp(2N).
//!
//! Orthogonal samples come from the QR decomposition of a real standard
//! Gaussian matrix with the R-diagonal sign fix; symplectic samples from
//! Gram-Schmidt over the quaternion algebra applied to a quaternionic
//! standard Gaussian matrix, realized as 2x2 complex blocks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use momentlab_core::error::{Error, Result};
use momentlab_core::Ensemble;

/// Diagonal entries of R below this threshold flag a numerically singular
/// draw; the draw is repeated once and then reported as an error.
const SINGULAR_TOL: f64 = 1e-12;

/// One Haar-distributed matrix together with its ensemble tag.
#[derive(Debug, Clone)]
pub struct HaarSample {
    pub ensemble: Ensemble,
    pub dim: usize,
    pub matrix: DMatrix<Complex64>,
}

impl HaarSample {
    /// Wraps an explicit square matrix; no group membership is enforced,
    /// so callers can build reference samples for the invariant checks.
    pub fn from_matrix(ensemble: Ensemble, matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::Domain(format!(
                "sample matrix must be square and nonempty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let dim = matrix.nrows();
        Ok(HaarSample {
            ensemble,
            dim,
            matrix,
        })
    }

    /// Largest entry of |U*U - I|.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.matrix.adjoint() * &self.matrix;
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let target = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((gram[(i, j)] - target).norm());
            }
        }
        worst
    }

    /// Largest entry of |U^T J U - J| for the standard skew form
    /// J = diag of 2x2 blocks [[0, 1], [-1, 0]]; requires even dimension.
    pub fn symplectic_defect(&self) -> Result<f64> {
        if self.dim % 2 != 0 {
            return Err(Error::Domain(format!(
                "the skew form needs an even dimension, got {}",
                self.dim
            )));
        }
        let j = standard_skew_form(self.dim);
        let twisted = self.matrix.transpose() * &j * &self.matrix;
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                worst = worst.max((twisted[(r, c)] - j[(r, c)]).norm());
            }
        }
        Ok(worst)
    }

    /// Determinant as a real number; orthogonal samples give +1 or -1,
    /// symplectic samples +1.
    pub fn det(&self) -> Result<f64> {
        let d = self.matrix.clone().determinant();
        if d.im.abs() > 1e-8 || (d.norm() - 1.0).abs() > 1e-8 {
            return Err(Error::Consistency(format!(
                "determinant {d} is not a real unit"
            )));
        }
        Ok(d.re)
    }
}

/// The standard skew form as a dense matrix.
pub fn standard_skew_form(dim: usize) -> DMatrix<Complex64> {
    let mut j = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for b in 0..dim / 2 {
        j[(2 * b, 2 * b + 1)] = Complex64::new(1.0, 0.0);
        j[(2 * b + 1, 2 * b)] = Complex64::new(-1.0, 0.0);
    }
    j
}

/// Draws one Haar sample from the ensemble at cap parameter `N`:
/// O(2N+1) or USp(2N).
pub fn sample<R: Rng>(ensemble: Ensemble, n_cap: usize, rng: &mut R) -> Result<HaarSample> {
    if n_cap == 0 {
        return Err(Error::Domain("the cap parameter N must be positive".into()));
    }
    match ensemble {
        Ensemble::Orthogonal => sample_orthogonal(ensemble.dim(n_cap), rng),
        Ensemble::Symplectic => sample_symplectic(n_cap, rng),
    }
}

/// Haar measure on O(dim): QR of a real Gaussian matrix, with each column
/// of Q negated where the matching diagonal entry of R is negative. Both
/// components occur; the determinant records which one the draw produced.
pub fn sample_orthogonal<R: Rng>(dim: usize, rng: &mut R) -> Result<HaarSample> {
    if dim == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    for _attempt in 0..2 {
        let gauss = DMatrix::<f64>::from_fn(dim, dim, |_, _| rng.sample(StandardNormal));
        let qr = gauss.qr();
        let r = qr.r();
        if (0..dim).any(|j| r[(j, j)].abs() < SINGULAR_TOL) {
            continue;
        }
        let mut q = qr.q();
        for j in 0..dim {
            if r[(j, j)] < 0.0 {
                for i in 0..dim {
                    q[(i, j)] = -q[(i, j)];
                }
            }
        }
        let matrix = DMatrix::from_fn(dim, dim, |i, j| Complex64::new(q[(i, j)], 0.0));
        return Ok(HaarSample {
            ensemble: Ensemble::Orthogonal,
            dim,
            matrix,
        });
    }
    Err(Error::Sampling(
        "two consecutive numerically singular Gaussian draws".into(),
    ))
}

/// A quaternion a + b j stored by its two complex components; the complex
/// realization is the 2x2 block [[a, b], [-conj(b), conj(a)]].
#[derive(Debug, Clone, Copy)]
struct Quat {
    a: Complex64,
    b: Complex64,
}

impl Quat {
    const ZERO: Quat = Quat {
        a: Complex64::new(0.0, 0.0),
        b: Complex64::new(0.0, 0.0),
    };

    fn conj(self) -> Quat {
        Quat {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    fn mul(self, rhs: Quat) -> Quat {
        Quat {
            a: self.a * rhs.a - self.b * rhs.b.conj(),
            b: self.a * rhs.b + self.b * rhs.a.conj(),
        }
    }

    fn sub(self, rhs: Quat) -> Quat {
        Quat {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }

    fn scale(self, t: f64) -> Quat {
        Quat {
            a: self.a * t,
            b: self.b * t,
        }
    }

    fn norm_sq(self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr()
    }
}

/// Haar measure on USp(2N): Gram-Schmidt over the quaternions applied to
/// a quaternionic Gaussian N x N matrix. The quaternionic inner product
/// sum conj(u_i) v_i makes column space a right module, so projection
/// coefficients multiply from the right.
pub fn sample_symplectic<R: Rng>(n_cap: usize, rng: &mut R) -> Result<HaarSample> {
    if n_cap == 0 {
        return Err(Error::Domain("the cap parameter N must be positive".into()));
    }
    let n = n_cap;
    'attempt: for _attempt in 0..2 {
        let mut cols: Vec<Vec<Quat>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Quat {
                        a: Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
                        b: Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
                    })
                    .collect()
            })
            .collect();
        for j in 0..n {
            for i in 0..j {
                let mut c = Quat::ZERO;
                for r in 0..n {
                    let t = cols[i][r].conj().mul(cols[j][r]);
                    c.a += t.a;
                    c.b += t.b;
                }
                for r in 0..n {
                    let shift = cols[i][r].mul(c);
                    cols[j][r] = cols[j][r].sub(shift);
                }
            }
            let norm_sq: f64 = cols[j].iter().map(|q| q.norm_sq()).sum();
            if norm_sq < SINGULAR_TOL * SINGULAR_TOL {
                continue 'attempt;
            }
            let inv = 1.0 / norm_sq.sqrt();
            for r in 0..n {
                cols[j][r] = cols[j][r].scale(inv);
            }
        }
        let dim = 2 * n;
        let mut matrix = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for (j, col) in cols.iter().enumerate() {
            for (i, q) in col.iter().enumerate() {
                matrix[(2 * i, 2 * j)] = q.a;
                matrix[(2 * i, 2 * j + 1)] = q.b;
                matrix[(2 * i + 1, 2 * j)] = -q.b.conj();
                matrix[(2 * i + 1, 2 * j + 1)] = q.a.conj();
            }
        }
        return Ok(HaarSample {
            ensemble: Ensemble::Symplectic,
            dim,
            matrix,
        });
    }
    Err(Error::Sampling(
        "two consecutive numerically singular Gaussian draws".into(),
    ))
}

impl std::ops::AddAssign for Quat {
    fn add_assign(&mut self, rhs: Quat) {
        self.a += rhs.a;
        self.b += rhs.b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn orthogonal_samples_are_orthogonal_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in [1, 2, 3, 5, 7] {
            let s = sample_orthogonal(dim, &mut rng).unwrap();
            assert!(s.unitarity_defect() < 1e-10, "dim {dim}");
            let d = s.det().unwrap();
            assert!((d.abs() - 1.0).abs() < 1e-10, "dim {dim} det {d}");
            for j in 0..dim {
                let norm: f64 = (0..dim).map(|i| s.matrix[(i, j)].norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn both_orthogonal_components_occur() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen = [false, false];
        for _ in 0..64 {
            let s = sample_orthogonal(3, &mut rng).unwrap();
            let d = s.det().unwrap();
            seen[usize::from(d > 0.0)] = true;
        }
        assert_eq!(seen, [true, true]);
    }

    #[test]
    fn symplectic_samples_satisfy_the_skew_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n_cap in [1, 2, 3] {
            let s = sample_symplectic(n_cap, &mut rng).unwrap();
            assert_eq!(s.dim, 2 * n_cap);
            assert!(s.unitarity_defect() < 1e-10, "N {n_cap}");
            assert!(s.symplectic_defect().unwrap() < 1e-8, "N {n_cap}");
            let d = s.det().unwrap();
            assert!((d - 1.0).abs() < 1e-8, "N {n_cap} det {d}");
        }
    }

    #[test]
    fn quaternion_block_realization_squares_to_minus_one_for_j() {
        let j = Quat {
            a: Complex64::new(0.0, 0.0),
            b: Complex64::new(1.0, 0.0),
        };
        let sq = j.mul(j);
        assert_eq!(sq.a, Complex64::new(-1.0, 0.0));
        assert_eq!(sq.b, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn zero_cap_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            sample(Ensemble::Symplectic, 0, &mut rng),
            Err(Error::Domain(_))
        ));
        assert!(matches!(sample_orthogonal(0, &mut rng), Err(Error::Domain(_))));
    }
}
