//! Lattice fits reproduce the printed leading coefficients, the degree
//! witnesses reject underfit hypotheses, and the Monte Carlo estimator
//! converges to the fitted value.

use num::rational::BigRational;
use num::BigInt;
use num::ToPrimitive;

use momentlab_core::error::Error;
use momentlab_core::gamma::{gamma_lattice_fit, lattice_samples};
use momentlab_core::gammamc::gamma_mc_integral;
use momentlab_core::quasi::fit_quasi_polynomial;
use momentlab_core::Ensemble;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn symplectic_k1_fits() {
    let half = gamma_lattice_fit(Ensemble::Symplectic, 1, 1, 2).unwrap();
    assert_eq!(half.fit.degree(), 1);
    assert_eq!(half.gamma, rat(1, 4));

    let quarter = gamma_lattice_fit(Ensemble::Symplectic, 1, 1, 4).unwrap();
    assert_eq!(quarter.gamma, rat(1, 8));
}

#[test]
fn symplectic_k2_fit_is_the_printed_value() {
    let fit = gamma_lattice_fit(Ensemble::Symplectic, 2, 1, 2).unwrap();
    assert_eq!(fit.fit.degree(), 8);
    assert_eq!(fit.gamma, rat(1, 55050240));
    for lead in fit.fit.leading_coefficients().into_iter().flatten() {
        assert_eq!(lead, rat(1, 215040));
    }
}

#[test]
fn orthogonal_k2_fit_is_the_printed_value() {
    let fit = gamma_lattice_fit(Ensemble::Orthogonal, 2, 1, 3).unwrap();
    assert_eq!(fit.fit.degree(), 4);
    assert_eq!(fit.gamma, rat(1, 1944));
}

#[test]
fn degree_witnesses_reject_underfits() {
    let samples = lattice_samples(Ensemble::Symplectic, 2, 1, 2, 11).unwrap();
    assert!(matches!(
        fit_quasi_polynomial(&samples, 7, 2),
        Err(Error::FitFailure(_))
    ));
    assert!(fit_quasi_polynomial(&samples, 8, 2).is_ok());

    let samples = lattice_samples(Ensemble::Orthogonal, 2, 1, 3, 7).unwrap();
    assert!(matches!(
        fit_quasi_polynomial(&samples, 3, 2),
        Err(Error::FitFailure(_))
    ));
    assert!(fit_quasi_polynomial(&samples, 4, 2).is_ok());
}

#[test]
fn monte_carlo_converges_to_the_symplectic_k2_fit() {
    let target = rat(1, 55050240).to_f64().unwrap();
    let est = gamma_mc_integral(Ensemble::Symplectic, 2, 0.5, 100_000_000, 1).unwrap();
    assert!(!est.degenerate, "acceptance region was never hit");
    assert!(est.stderr > 0.0);
    assert!(
        (est.estimate - target).abs() <= 4.0 * est.stderr,
        "estimate {} vs target {target} with stderr {}",
        est.estimate,
        est.stderr
    );
}
