//! Numerical cross-checks for the exact moment engines: Haar-distributed
//! sampling of O(2N+1) and USp(2N), secular coefficients of the sampled
//! matrices, and Monte Carlo estimation of
//!
//! ```text
//! I(n;N) = E |sum_{j_1+...+j_k = n} Sc_{j_1}(U) ... Sc_{j_k}(U)|^2
//! ```
//!
//! with the orthogonal mass-2 convention matching `momentlab_core`.

pub mod estimate;
pub mod sample;
pub mod secular;

pub use estimate::{composition_sum, estimate_i, ks_two_sample, power_coeff, RmtEstimate};
pub use sample::{sample, sample_orthogonal, sample_symplectic, HaarSample};
pub use secular::{
    conjugate_pairing_defect, eigenvalues, functional_symmetry_defect, secular_coeffs,
    secular_coeffs_char_poly,
};
