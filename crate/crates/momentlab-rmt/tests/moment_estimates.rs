//! Monte Carlo moment estimates against the exact engines.

use momentlab_core::ssyt::i_moment;
use momentlab_core::Ensemble;
use momentlab_rmt::estimate_i;
use num::ToPrimitive;

#[test]
fn estimates_land_within_four_standard_errors_of_the_exact_values() {
    let cases = [
        (Ensemble::Symplectic, 1usize, 2usize, 3usize),
        (Ensemble::Orthogonal, 1, 1, 1),
        (Ensemble::Orthogonal, 2, 1, 2),
    ];
    for (ensemble, k, n, n_cap) in cases {
        let exact = i_moment(ensemble, k, n, n_cap).value.to_f64().unwrap();
        let est = estimate_i(ensemble, k, n, n_cap, 10_000, 20_260_819).unwrap();
        assert!(est.stderr > 0.0);
        assert!(
            (est.estimate - exact).abs() <= 4.0 * est.stderr,
            "{} k={k} n={n} N={n_cap}: {} +- {} vs exact {exact}",
            ensemble.name(),
            est.estimate,
            est.stderr
        );
    }
}

#[test]
fn weight_zero_estimate_is_exact() {
    let est = estimate_i(Ensemble::Orthogonal, 2, 0, 2, 1_000, 5).unwrap();
    assert_eq!(est.estimate, 2.0);
    assert_eq!(est.stderr, 0.0);
}

#[test]
fn weights_beyond_the_top_index_estimate_zero() {
    let top = Ensemble::Symplectic.max_weight(1, 1);
    let est = estimate_i(Ensemble::Symplectic, 1, top + 1, 1, 1_000, 5).unwrap();
    assert_eq!(est.estimate, 0.0);
}
