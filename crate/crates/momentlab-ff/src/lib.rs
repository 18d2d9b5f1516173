//! The arithmetic side of the moment laboratory: divisor sums over F_q[T]
//! and F_q[S], sector decompositions of the unit group mod S^k, super-even
//! characters and their L-polynomials, and exact variance identities that
//! the exact moment engines of `momentlab_core` predict in the large-q
//! limit.
//!
//! Everything here is enumeration over finite strata of monic polynomials;
//! the only floating point is in character values, so the stated identities
//! hold to roundoff rather than to a statistical tolerance.

pub mod characters;
pub mod divisor;
pub mod lfunc;
pub mod poly;
pub mod sector;
pub mod variance;

pub use characters::{super_even_characters, SuperEvenCharacter};
pub use divisor::{chi2, chi2_scalar, chi2_sum_vanishes, divisor_table, DivisorTable};
pub use lfunc::{
    durand_kerner, l_polynomial, m0_from_tally, m0_sum, sector_tally, LPolynomial, SectorTally,
};
pub use poly::{is_odd_prime, monic_irreducibles, require_odd_prime, FqPoly};
pub use sector::{sector_group, sigma, sqrt_series, trunc_inv, trunc_mul, u_from_unit, SectorGroup};
pub use variance::{
    qr_deviation_squares, qr_variance, rmt_compare, sector_mean, sector_variance, CompareRow,
    CompareSide,
};
