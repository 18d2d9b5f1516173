//! Exact arithmetic engines for the moment integrals
//!
//! ```text
//! I^S(n;N) = int_{Sp(2N)}    |sum_{j_1+...+j_k = n} Sc_{j_1}(U) ... Sc_{j_k}(U)|^2 dU ,
//! I^O(n;N) = int_{O(2N+1)}   |sum_{j_1+...+j_k = n} Sc_{j_1}(U) ... Sc_{j_k}(U)|^2 dU ,
//! ```
//!
//! where `Sc_j` is the j-th secular coefficient, `det(I + Ux) = sum_j Sc_j(U) x^j`,
//! and the orthogonal group carries total mass 2.
//!
//! Four independent engines compute the same integers:
//! * [`ssyt`]: semistandard-Young-tableau counts (the reference oracle),
//! * [`detgen`]: coefficient extraction from a determinant generating function,
//! * [`closed`]: quasi-polynomial closed forms in `n`,
//! * [`lattice`]: Ehrhart-style lattice-point counts in a dilated polytope.
//!
//! The [`quasi`], [`gamma`] and [`gammamc`] modules recover the leading
//! asymptotic coefficients `gamma^S`, `gamma^O` from exact fits and from a
//! direct Monte Carlo integral.

pub mod closed;
pub mod detgen;
pub mod error;
pub mod gamma;
pub mod gammamc;
pub mod lattice;
pub mod partition;
pub mod quasi;
pub mod series;
pub mod ssyt;

pub use error::{Error, Result};
pub use partition::Partition;

/// The two compact groups under study.
///
/// `Symplectic` means `Sp(2N)` (equivalently `USp(2N)`); `Orthogonal` means
/// `O(2N+1)` with the mass-2 normalization: every orthogonal moment in this
/// crate carries an explicit factor 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ensemble {
    Symplectic,
    Orthogonal,
}

impl Ensemble {
    /// Matrix dimension for cap parameter `N`: `2N` or `2N+1`.
    pub fn dim(self, n_cap: usize) -> usize {
        match self {
            Ensemble::Symplectic => 2 * n_cap,
            Ensemble::Orthogonal => 2 * n_cap + 1,
        }
    }

    /// Largest `n` with a nonzero moment: `2Nk` or `(2N+1)k`.
    pub fn max_weight(self, k: usize, n_cap: usize) -> usize {
        self.dim(n_cap) * k
    }

    /// Largest admissible part in the Schur-sum shape enumeration:
    /// `2N` for symplectic (even partitions), `2N+1` for orthogonal
    /// (partitions with even conjugate).
    pub fn part_cap(self, n_cap: usize) -> u32 {
        self.dim(n_cap) as u32
    }

    pub fn name(self) -> &'static str {
        match self {
            Ensemble::Symplectic => "sym",
            Ensemble::Orthogonal => "orth",
        }
    }
}

impl std::str::FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" | "symplectic" => Ok(Ensemble::Symplectic),
            "orth" | "orthogonal" => Ok(Ensemble::Orthogonal),
            other => Err(Error::Parse(format!(
                "unknown ensemble `{other}` (expected `sym` or `orth`)"
            ))),
        }
    }
}
