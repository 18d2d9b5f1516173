//! Closed-form evaluations: the small-n propositions for both ensembles,
//! the explicit k = 1 and k = 2 quasi-polynomials, functional-equation
//! reflection, the printed gamma pieces, and a boundary diagnostic that
//! locates where the closed forms stop agreeing with tableau counts.

use num::rational::BigRational;
use num::{BigInt, BigUint, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quasi::PiecewisePolynomial;
use crate::ssyt;
use crate::Ensemble;

/// Exact binomial coefficient by the multiplicative formula; every
/// intermediate division is exact.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Barnes value G(1+k) = 1! * 2! * ... * (k-1)!.
pub fn barnes_g(k: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut factorial = BigUint::one();
    for j in 1..k {
        factorial *= BigUint::from(j);
        acc *= &factorial;
    }
    acc
}

fn choose2(k: u64) -> u64 {
    k * (k - 1) / 2
}

/// The symplectic small-n sum, evaluated without any range guard. The
/// staircase minor of the determinant formula contributes the constant 1
/// once the binomial rows are normalized, so the sum carries no Barnes-G
/// denominator.
fn i_sym_closed_raw(k: usize, n: usize) -> BigUint {
    let k = k as u64;
    let n = n as u64;
    let a = choose2(k + 1);
    let k2 = k * k;
    let mut sum = BigUint::zero();
    let mut l = n % 2;
    while l <= n {
        let half = (n - l) / 2;
        let b1 = binomial(half + a - 1, a - 1);
        sum += &b1 * &b1 * binomial(l + k2 - 1, k2 - 1);
        l += 2;
    }
    sum
}

/// The orthogonal small-n sum, evaluated without any range guard. The two
/// coset determinants contribute matching staircase minors, which is where
/// the overall factor 2 comes from; there is no Barnes-G denominator.
fn i_orth_closed_raw(k: usize, n: usize) -> BigUint {
    let k = k as u64;
    let n = n as u64;
    let a = choose2(k);
    let k2 = k * k;
    let mut sum = BigUint::zero();
    let mut l = n % 2;
    while l <= n {
        let half = (n - l) / 2;
        let b1 = if a == 0 {
            if half == 0 {
                BigUint::one()
            } else {
                BigUint::zero()
            }
        } else {
            binomial(half + a - 1, a - 1)
        };
        sum += &b1 * &b1 * binomial(l + k2 - 1, k2 - 1);
        l += 2;
    }
    sum * 2u32
}

fn check_safe_range(n: usize, n_cap: usize) -> Result<()> {
    if n > n_cap {
        return Err(Error::Range(format!(
            "n = {n} exceeds the enforced closed-form range n <= N = {n_cap}; \
             reflect through the functional equation or enumerate tableaux"
        )));
    }
    Ok(())
}

/// I^S_{d_k,2}(n;N) by the small-n proposition, valid on the enforced
/// range n <= N.
pub fn i_sym_closed(k: usize, n: usize, n_cap: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    check_safe_range(n, n_cap)?;
    Ok(i_sym_closed_raw(k, n))
}

/// I^O_{d_k,2}(n;N) by the small-n proposition, valid on the enforced
/// range n <= N; k = 1 is degenerate there (the tableau engines report 2).
pub fn i_orth_closed(k: usize, n: usize, n_cap: usize) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::Domain(
            "orthogonal closed form requires k >= 2; the k = 1 moment is identically 2".into(),
        ));
    }
    check_safe_range(n, n_cap)?;
    Ok(i_orth_closed_raw(k, n))
}

/// The k = 1 symplectic two-branch display.
pub fn i_sym_k1(n: usize, n_cap: usize) -> BigUint {
    if n > 2 * n_cap {
        return BigUint::zero();
    }
    let v = if n <= n_cap {
        (n + 2) / 2
    } else {
        (2 * n_cap - n + 2) / 2
    };
    BigUint::from(v)
}

fn eval_int_poly(coeffs: &[i64], n: u64) -> BigInt {
    let n = BigInt::from(n);
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &n + BigInt::from(*c);
    }
    acc
}

/// The printed degree-8 quasi-polynomial for I^S_{d_2,2}(n;N), n <= N.
pub fn i_sym_k2_display(n: u64) -> BigUint {
    let main = eval_int_poly(
        &[
            1018395, 2031720, 1698572, 787080, 221354, 38640, 4088, 240, 6,
        ],
        n,
    );
    let parity = eval_int_poly(&[863, 840, 284, 40, 2], n);
    let main = BigRational::new(main, BigInt::from(1290240));
    let mut parity = BigRational::new(parity, BigInt::from(4096));
    if n % 2 == 1 {
        parity = -parity;
    }
    let total = main + parity;
    assert!(
        total.is_integer() && !total.is_negative(),
        "k = 2 symplectic display must be a nonnegative integer"
    );
    total.to_integer().to_biguint().expect("nonnegative")
}

/// The printed degree-4 quasi-polynomial for I^O_{d_2,2}(n;N), n <= N.
pub fn i_orth_k2_display(n: u64) -> BigUint {
    let main = eval_int_poly(&[93, 168, 100, 24, 2], n);
    let main = BigRational::new(main, BigInt::from(48));
    let mut parity = BigRational::new(BigInt::one(), BigInt::from(16));
    if n % 2 == 1 {
        parity = -parity;
    }
    let total = main + parity;
    assert!(
        total.is_integer() && !total.is_negative(),
        "k = 2 orthogonal display must be a nonnegative integer"
    );
    total.to_integer().to_biguint().expect("nonnegative")
}

/// Which engine actually served an auto-dispatched evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolvedEngine {
    Closed,
    ClosedReflected,
    Ssyt,
}

impl ResolvedEngine {
    pub fn name(self) -> &'static str {
        match self {
            ResolvedEngine::Closed => "closed",
            ResolvedEngine::ClosedReflected => "closed-reflected",
            ResolvedEngine::Ssyt => "ssyt",
        }
    }
}

fn closed_in_range(ensemble: Ensemble, k: usize) -> bool {
    match ensemble {
        Ensemble::Symplectic => true,
        Ensemble::Orthogonal => k >= 2,
    }
}

fn closed_value(ensemble: Ensemble, k: usize, n: usize) -> BigUint {
    match ensemble {
        Ensemble::Symplectic => i_sym_closed_raw(k, n),
        Ensemble::Orthogonal => i_orth_closed_raw(k, n),
    }
}

/// Total evaluation over 0 <= n <= dim*k: closed form on the safe range,
/// reflected closed form near the top, tableau enumeration in the middle.
pub fn i_auto(ensemble: Ensemble, k: usize, n: usize, n_cap: usize) -> (BigUint, ResolvedEngine) {
    let top = ensemble.max_weight(k, n_cap);
    if n > top {
        return (BigUint::zero(), ResolvedEngine::Closed);
    }
    if closed_in_range(ensemble, k) {
        if n <= n_cap {
            return (closed_value(ensemble, k, n), ResolvedEngine::Closed);
        }
        let reflected = top - n;
        if reflected <= n_cap {
            return (
                closed_value(ensemble, k, reflected),
                ResolvedEngine::ClosedReflected,
            );
        }
    }
    (
        ssyt::i_moment(ensemble, k, n, n_cap).value,
        ResolvedEngine::Ssyt,
    )
}

/// Evaluate I at the reflected index given by the functional equation,
/// 2Nk - n (symplectic) or (2N+1)k - n (orthogonal).
pub fn reflect(ensemble: Ensemble, k: usize, n: usize, n_cap: usize) -> Result<BigUint> {
    let top = ensemble.max_weight(k, n_cap);
    if n > top {
        return Err(Error::Range(format!(
            "n = {n} lies outside 0..={top} for this ensemble"
        )));
    }
    Ok(i_auto(ensemble, k, top - n, n_cap).0)
}

/// A gamma evaluation: either a value from a printed piece or a marker
/// that c falls outside every printed interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaPiece {
    Value(BigRational),
    UnknownPiece,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn gamma_sym_k1() -> PiecewisePolynomial {
    PiecewisePolynomial::new(vec![
        (rat(0, 1), rat(1, 2), vec![rat(0, 1), rat(1, 2)]),
        (rat(1, 2), rat(1, 1), vec![rat(1, 2), rat(-1, 2)]),
    ])
    .expect("printed pieces agree at c = 1/2")
}

fn monomial_shift_piece(scale: BigRational, shift: i64, deg: usize) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (r, c) in coeffs.iter_mut().enumerate() {
        let mut term = BigRational::from_integer(BigInt::from(binomial(deg as u64, r as u64)));
        term *= BigRational::from_integer(BigInt::from(shift).pow((deg - r) as u32));
        if (deg - r) % 2 == 1 {
            term = -term;
        };
        *c = term * &scale;
    }
    coeffs
}

fn gamma_sym_k2() -> PiecewisePolynomial {
    let scale = rat(1, 215040);
    let mut c8 = vec![BigRational::zero(); 9];
    c8[8] = scale.clone();
    PiecewisePolynomial::new(vec![
        (rat(0, 1), rat(1, 2), c8),
        (rat(3, 2), rat(2, 1), monomial_shift_piece(scale, 2, 8)),
    ])
    .expect("disjoint printed pieces")
}

fn gamma_orth_k2() -> PiecewisePolynomial {
    let scale = rat(1, 24);
    let mut c4 = vec![BigRational::zero(); 5];
    c4[4] = scale.clone();
    PiecewisePolynomial::new(vec![
        (rat(0, 1), rat(1, 2), c4),
        (rat(3, 2), rat(2, 1), monomial_shift_piece(scale, 2, 4)),
    ])
    .expect("disjoint printed pieces")
}

/// Evaluate the printed gamma pieces at an exact rational c.
pub fn gamma_piece(ensemble: Ensemble, k: usize, c: &BigRational) -> Result<GammaPiece> {
    if !(1..=2).contains(&k) {
        return Err(Error::Domain(format!(
            "gamma pieces are printed only for k in {{1, 2}}, got k = {k}"
        )));
    }
    let pieces = match (ensemble, k) {
        (Ensemble::Symplectic, 1) => Some(gamma_sym_k1()),
        (Ensemble::Symplectic, 2) => Some(gamma_sym_k2()),
        (Ensemble::Orthogonal, 2) => Some(gamma_orth_k2()),
        _ => None,
    };
    Ok(match pieces.and_then(|p| p.evaluate(c)) {
        Some(v) => GammaPiece::Value(v),
        None => GammaPiece::UnknownPiece,
    })
}

/// Compare the unguarded closed form with tableau counts for n = 0..dim*k
/// and report the first mismatch, locating the empirical validity boundary.
pub fn boundary_scan(ensemble: Ensemble, k: usize, n_cap: usize) -> Option<usize> {
    let top = ensemble.max_weight(k, n_cap);
    (0..=top).find(|&n| {
        closed_value(ensemble, k, n) != ssyt::i_moment(ensemble, k, n, n_cap).value
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn binomial_matches_pascal() {
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(5, 6), big(0));
        assert_eq!(binomial(52, 5), big(2598960));
    }

    #[test]
    fn barnes_values() {
        assert_eq!(barnes_g(1), big(1));
        assert_eq!(barnes_g(2), big(1));
        assert_eq!(barnes_g(3), big(2));
        assert_eq!(barnes_g(4), big(12));
        assert_eq!(barnes_g(5), big(288));
    }

    #[test]
    fn symplectic_closed_examples() {
        assert_eq!(i_sym_closed(1, 4, 5).unwrap(), big(3));
        assert_eq!(i_sym_closed(2, 0, 3).unwrap(), big(1));
        assert_eq!(i_sym_closed(2, 1, 3).unwrap(), big(4));
    }

    #[test]
    fn orthogonal_closed_examples() {
        assert_eq!(i_orth_closed(2, 0, 3).unwrap(), big(2));
        assert_eq!(i_orth_closed(2, 1, 3).unwrap(), big(8));
        assert_eq!(i_orth_closed(2, 5, 6).unwrap(), big(160));
        assert!(matches!(i_orth_closed(1, 0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn out_of_range_points_at_reflection() {
        assert!(matches!(i_sym_closed(1, 6, 5), Err(Error::Range(_))));
        assert!(matches!(i_orth_closed(2, 7, 6), Err(Error::Range(_))));
    }

    #[test]
    fn k1_two_branch_display() {
        let expected = [1u64, 1, 2, 2, 3, 3, 3, 2, 2, 1, 1];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(i_sym_k1(n, 5), big(*e), "n = {n}");
        }
        assert_eq!(i_sym_k1(11, 5), big(0));
    }

    #[test]
    fn displays_match_closed_forms_to_thirty() {
        for n in 0..=30usize {
            assert_eq!(
                i_sym_k2_display(n as u64),
                i_sym_closed_raw(2, n),
                "symplectic display at n = {n}"
            );
            assert_eq!(
                i_orth_k2_display(n as u64),
                i_orth_closed_raw(2, n),
                "orthogonal display at n = {n}"
            );
        }
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(reflect(Ensemble::Symplectic, 1, 5, 3).unwrap(), big(1));
        for n_cap in 1..=4usize {
            assert_eq!(
                reflect(Ensemble::Symplectic, 2, 4 * n_cap, n_cap).unwrap(),
                big(1)
            );
            assert_eq!(
                reflect(Ensemble::Orthogonal, 2, 2 * (2 * n_cap + 1), n_cap).unwrap(),
                big(2)
            );
        }
    }

    #[test]
    fn auto_dispatch_covers_the_full_range() {
        for (ensemble, k, n_cap) in [
            (Ensemble::Symplectic, 2, 3),
            (Ensemble::Orthogonal, 2, 2),
            (Ensemble::Orthogonal, 1, 2),
        ] {
            let top = (ensemble.max_weight(k, n_cap) / 2) as usize;
            for n in 0..=top {
                let (value, _) = i_auto(ensemble, k, n, n_cap);
                assert_eq!(
                    value,
                    ssyt::i_moment(ensemble, k, n, n_cap).value,
                    "{} k={k} n={n} N={n_cap}",
                    ensemble.name()
                );
            }
        }
    }

    #[test]
    fn auto_dispatch_labels_engines() {
        assert_eq!(
            i_auto(Ensemble::Symplectic, 2, 1, 3).1,
            ResolvedEngine::Closed
        );
        assert_eq!(
            i_auto(Ensemble::Symplectic, 2, 11, 3).1,
            ResolvedEngine::ClosedReflected
        );
        assert_eq!(i_auto(Ensemble::Symplectic, 2, 6, 3).1, ResolvedEngine::Ssyt);
    }

    #[test]
    fn gamma_piece_examples() {
        let got = gamma_piece(Ensemble::Symplectic, 1, &rat(1, 4)).unwrap();
        assert_eq!(got, GammaPiece::Value(rat(1, 8)));
        let got = gamma_piece(Ensemble::Symplectic, 2, &rat(1, 2)).unwrap();
        assert_eq!(got, GammaPiece::Value(rat(1, 55050240)));
        let got = gamma_piece(Ensemble::Orthogonal, 2, &rat(1, 3)).unwrap();
        assert_eq!(got, GammaPiece::Value(rat(1, 1944)));
    }

    #[test]
    fn gamma_piece_reflected_intervals() {
        let got = gamma_piece(Ensemble::Symplectic, 2, &rat(7, 4)).unwrap();
        assert_eq!(got, GammaPiece::Value(rat(1, 65536) * rat(1, 215040)));
        let got = gamma_piece(Ensemble::Orthogonal, 2, &rat(2, 1)).unwrap();
        assert_eq!(got, GammaPiece::Value(rat(0, 1)));
    }

    #[test]
    fn gamma_piece_gap_and_unsupported() {
        assert_eq!(
            gamma_piece(Ensemble::Symplectic, 2, &rat(1, 1)).unwrap(),
            GammaPiece::UnknownPiece
        );
        assert_eq!(
            gamma_piece(Ensemble::Orthogonal, 1, &rat(1, 4)).unwrap(),
            GammaPiece::UnknownPiece
        );
        assert!(matches!(
            gamma_piece(Ensemble::Symplectic, 3, &rat(1, 2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn boundary_scan_locates_the_validity_boundary() {
        for k in 1..=3usize {
            for n_cap in 1..=3usize {
                assert_eq!(
                    boundary_scan(Ensemble::Symplectic, k, n_cap),
                    Some(n_cap + 1),
                    "sym k={k} N={n_cap}"
                );
            }
        }
        for k in 2..=3usize {
            for n_cap in 1..=2usize {
                assert_eq!(
                    boundary_scan(Ensemble::Orthogonal, k, n_cap),
                    Some(2 * n_cap + 2),
                    "orth k={k} N={n_cap}"
                );
            }
        }
        assert_eq!(boundary_scan(Ensemble::Orthogonal, 1, 3), None);
    }

    #[test]
    fn closed_forms_match_tableaux_within_safe_range() {
        for k in [2usize, 3] {
            for n_cap in 1..=5usize {
                for n in 0..=n_cap {
                    assert_eq!(
                        i_sym_closed(k, n, n_cap).unwrap(),
                        ssyt::i_moment(Ensemble::Symplectic, k, n, n_cap).value,
                        "sym k={k} n={n} N={n_cap}"
                    );
                    assert_eq!(
                        i_orth_closed(k, n, n_cap).unwrap(),
                        ssyt::i_moment(Ensemble::Orthogonal, k, n, n_cap).value,
                        "orth k={k} n={n} N={n_cap}"
                    );
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn binomial_recurrence(n in 1u64..40, r in 1u64..40) {
            prop_assert_eq!(
                binomial(n, r),
                binomial(n - 1, r - 1) + binomial(n - 1, r)
            );
        }

        #[test]
        fn symplectic_display_leading_parity_cancel(n in 0u64..60) {
            let v = i_sym_k2_display(n);
            prop_assert_eq!(v, i_sym_closed_raw(2, n as usize));
        }
    }
}
