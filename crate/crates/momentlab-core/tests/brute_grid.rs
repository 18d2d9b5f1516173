//! Full-grid comparison of the dynamic-programming tableau engine against
//! the depth-first brute-force Schur evaluation: for k <= 3, N <= 3 and all
//! 0 <= m, n <= (2N+1)k, the assembled coefficients J(m,n;N) must agree.

use num::BigUint;
use num::Zero;

use momentlab_core::ssyt::{brute, content_profile, enumerate_shapes, j_moment};
use momentlab_core::Ensemble;

fn grid_with(
    ensemble: Ensemble,
    k: usize,
    n_cap: usize,
    profile_of: impl Fn(&momentlab_core::Partition, usize) -> Vec<BigUint>,
) -> Vec<Vec<BigUint>> {
    let top = (2 * n_cap + 1) * k;
    let mut grid = vec![vec![BigUint::zero(); top + 1]; top + 1];
    for w in 0..=(2 * top) as u64 {
        for shape in enumerate_shapes(ensemble, k, n_cap, w) {
            let profile = profile_of(&shape, k);
            let lo = w.saturating_sub(top as u64);
            let hi = w.min(top as u64);
            for m in lo..=hi {
                let mut c = profile[m as usize].clone();
                if ensemble == Ensemble::Orthogonal {
                    c *= 2u32;
                }
                grid[m as usize][(w - m) as usize] += c;
            }
        }
    }
    grid
}

#[test]
fn dp_grid_matches_brute_force_grid() {
    for ensemble in [Ensemble::Symplectic, Ensemble::Orthogonal] {
        for k in 1..=3usize {
            for n_cap in 0..=3usize {
                let dp = grid_with(ensemble, k, n_cap, |s, k| content_profile(s, k));
                let df = grid_with(ensemble, k, n_cap, |s, k| brute::content_profile_dfs(s, k));
                assert_eq!(
                    dp, df,
                    "grid mismatch for {} k={k} N={n_cap}",
                    ensemble.name()
                );
                // the public assembly must match the scattered grid
                let top = (2 * n_cap + 1) * k;
                for m in (0..=top).step_by((top / 3).max(1)) {
                    for n in (0..=top).step_by((top / 3).max(1)) {
                        assert_eq!(
                            j_moment(ensemble, k, m as u64, n as u64, n_cap),
                            dp[m][n],
                            "j_moment mismatch at {} k={k} N={n_cap} m={m} n={n}",
                            ensemble.name()
                        );
                    }
                }
            }
        }
    }
}
