//! Tableau-counting engine: the reference oracle for the moments.
//!
//! The Schur-sum model expresses the generating functions as
//!
//! ```text
//! sum_{m,n} J^S(m,n;N) x^m y^n = sum_{lambda even, lambda_1 <= 2N}   s_lambda(x,..,x,y,..,y)
//! sum_{m,n} J^O(m,n;N) x^m y^n = 2 sum_{mu' even, mu_1 <= 2N+1}      s_mu(x,..,x,y,..,y)
//! ```
//!
//! with k copies of `x` and k copies of `y`, so `J(m,n)` counts semistandard
//! Young tableaux with entries in `{1..2k}` whose content puts `m` cells in the
//! low alphabet `{1..k}` and `n` cells in the high alphabet `{k+1..2k}`.
//! The diagonal `I(n;N) = J(n,n;N)` is the moment itself.
//!
//! Functions:
//! * [`enumerate_shapes`]: admissible shapes of a given weight,
//! * [`count_ssyt`]: tableaux of one shape with prescribed split content,
//! * [`content_profile`]: all splits of one shape at once,
//! * [`j_moment`], [`i_moment`]: the assembled coefficients,
//! * [`vertical_strip_coeff`]: the sign `c(mu, 2N)` from the orthogonal
//!   Schur-sum reduction,
//! * [`brute`]: depth-first reference implementations used as test oracles.

use std::collections::HashMap;

use num::BigUint;
use num::Zero;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::Ensemble;

/// One exact moment value `I(n;N)` together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentValue {
    pub ensemble: Ensemble,
    pub k: usize,
    pub n: usize,
    pub n_cap: usize,
    /// Always a nonnegative integer for these counts.
    pub value: BigUint,
}

/// Content histogram of a tableau with entries in `{1..2k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauContent {
    pub counts: Vec<u64>,
}

impl TableauContent {
    /// Cells in the low alphabet `{1..k}`.
    pub fn low_weight(&self, k: usize) -> u64 {
        self.counts[..k].iter().sum()
    }

    /// Cells in the high alphabet `{k+1..2k}`.
    pub fn high_weight(&self, k: usize) -> u64 {
        self.counts[k..].iter().sum()
    }
}

/// Shapes contributing to the weight-`weight` coefficient of the Schur sum.
///
/// Symplectic: all parts even, largest part <= 2N, at most 2k parts.
/// Orthogonal: conjugate even (every part repeated an even number of times),
/// largest part <= 2N+1, at most 2k parts.
///
/// Returns the empty list when nothing qualifies (odd weight in particular).
pub fn enumerate_shapes(ensemble: Ensemble, k: usize, n_cap: usize, weight: u64) -> Vec<Partition> {
    let cap = ensemble.part_cap(n_cap);
    let max_parts = 2 * k;
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    gen_shapes(ensemble, cap, max_parts, weight, &mut stack, &mut out);
    out
}

fn gen_shapes(
    ensemble: Ensemble,
    cap: u32,
    max_parts: usize,
    remaining: u64,
    stack: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        let cand = Partition::new(stack.clone()).expect("generated weakly decreasing");
        let ok = match ensemble {
            Ensemble::Symplectic => cand.is_even(),
            Ensemble::Orthogonal => cand.conjugate_is_even(),
        };
        if ok {
            out.push(cand);
        }
        return;
    }
    if stack.len() == max_parts {
        return;
    }
    let bound = stack.last().copied().unwrap_or(cap).min(remaining.min(cap as u64) as u32);
    let step = match ensemble {
        Ensemble::Symplectic => 2,
        Ensemble::Orthogonal => 1,
    };
    let mut p = bound;
    if ensemble == Ensemble::Symplectic && p % 2 == 1 {
        p -= 1;
    }
    while p >= 1 {
        stack.push(p);
        gen_shapes(ensemble, cap, max_parts, remaining - p as u64, stack, out);
        stack.pop();
        if p < step {
            break;
        }
        p -= step;
    }
}

/// All subpartitions `mu` contained in `shape`.
fn subpartitions(shape: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn rec(shape: &Partition, row: usize, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if row == shape.len() {
            out.push(Partition::from_padded(stack.clone()).expect("weakly decreasing"));
            return;
        }
        let hi = shape.part(row).min(stack.last().copied().unwrap_or(u32::MAX));
        let mut v = hi;
        loop {
            stack.push(v);
            rec(shape, row + 1, stack, out);
            stack.pop();
            if v == 0 {
                break;
            }
            v -= 1;
        }
    }
    rec(shape, 0, &mut stack, &mut out);
    out
}

/// Number of tableaux of `shape` with entries `{1..2k}`, split content
/// `(m, n)` across the low/high alphabets.
///
/// # Edge cases
/// * `m + n != |shape|` is a content-mismatch error.
/// * More than 2k parts: returns 0 (a column cannot be strictly increasing
///   with entries from a 2k-letter alphabet).
pub fn count_ssyt(shape: &Partition, k: usize, m: u64, n: u64) -> Result<BigUint> {
    if m + n != shape.weight() {
        return Err(Error::ContentMismatch {
            expected: shape.weight(),
            got: m + n,
        });
    }
    if shape.len() > 2 * k {
        return Ok(BigUint::zero());
    }
    let profile = content_profile(shape, k);
    Ok(profile.get(m as usize).cloned().unwrap_or_else(BigUint::zero))
}

/// For fixed `shape` and `k`, the vector indexed by `m = 0..=|shape|` whose
/// `m`-th entry counts tableaux with `m` cells in the low alphabet (and
/// `|shape| - m` in the high alphabet).
///
/// Computed by the intermediate-shape parametrization: a tableau is a chain
/// `0 = mu^(0) <= mu^(1) <= ... <= mu^(2k) = shape` of partitions with
/// horizontal-strip steps, and `m = |mu^(k)|`. The count splits as
/// `sum_{mu} low(mu) * high(mu)` where `low` counts k-step chains from the
/// empty shape to `mu` and `high` counts k-step chains from `mu` to `shape`.
pub fn content_profile(shape: &Partition, k: usize) -> Vec<BigUint> {
    let weight = shape.weight() as usize;
    if shape.len() > 2 * k {
        return vec![BigUint::zero(); weight + 1];
    }
    let subs = subpartitions(shape);
    let index: HashMap<&Partition, usize> = subs.iter().zip(0..).collect();

    // low[mu]: SSYT of shape mu with k letters
    let mut low = vec![BigUint::zero(); subs.len()];
    low[index[&Partition::empty()]] = BigUint::from(1u32);
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); subs.len()];
        for (mi, mu) in subs.iter().enumerate() {
            if low[mi].is_zero() {
                continue;
            }
            // add a horizontal strip on top of mu, staying inside shape
            for_each_strip_over(mu, shape, |rho| {
                next[index[rho]] += &low[mi];
            });
        }
        low = next;
    }

    // high[mu]: skew SSYT of shape/mu with k letters
    let mut high = vec![BigUint::zero(); subs.len()];
    high[index[shape]] = BigUint::from(1u32);
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); subs.len()];
        for (mi, mu) in subs.iter().enumerate() {
            for_each_strip_over(mu, shape, |rho| {
                let hr = &high[index[rho]];
                if !hr.is_zero() {
                    next[mi] += hr.clone();
                }
            });
        }
        high = next;
    }

    let mut profile = vec![BigUint::zero(); weight + 1];
    for (mi, mu) in subs.iter().enumerate() {
        if !low[mi].is_zero() && !high[mi].is_zero() {
            profile[mu.weight() as usize] += &low[mi] * &high[mi];
        }
    }
    profile
}

/// Calls `f` on every `rho` with `mu <= rho <= outer` and `rho/mu` a
/// horizontal strip. The interlacing `rho_1 >= mu_1 >= rho_2 >= mu_2 >= ...`
/// makes the rows independent intervals.
fn for_each_strip_over<F: FnMut(&Partition)>(mu: &Partition, outer: &Partition, mut f: F) {
    let rows = outer.len();
    let mut rho = vec![0u32; rows];
    fn rec<F: FnMut(&Partition)>(
        mu: &Partition,
        outer: &Partition,
        row: usize,
        rho: &mut Vec<u32>,
        f: &mut F,
    ) {
        if row == rho.len() {
            let p = Partition::from_padded(rho.clone()).expect("interlaced rows decrease");
            f(&p);
            return;
        }
        let lo = mu.part(row);
        let hi = if row == 0 {
            outer.part(0)
        } else {
            outer.part(row).min(mu.part(row - 1))
        };
        let mut v = lo;
        while v <= hi {
            rho[row] = v;
            rec(mu, outer, row + 1, rho, f);
            v += 1;
        }
        rho[row] = 0;
    }
    rec(mu, outer, 0, &mut rho, &mut f);
}

/// Off-diagonal coefficient `J(m,n;N)`: tableaux summed over all admissible
/// shapes of weight `m+n`. Orthogonal values carry the mass-2 factor.
pub fn j_moment(ensemble: Ensemble, k: usize, m: u64, n: u64, n_cap: usize) -> BigUint {
    let mut total = BigUint::zero();
    for shape in enumerate_shapes(ensemble, k, n_cap, m + n) {
        total += count_ssyt(&shape, k, m, n).expect("content matches enumerated weight");
    }
    if ensemble == Ensemble::Orthogonal {
        total *= 2u32;
    }
    total
}

/// The moment `I(n;N) = J(n,n;N)`.
pub fn i_moment(ensemble: Ensemble, k: usize, n: usize, n_cap: usize) -> MomentValue {
    let value = j_moment(ensemble, k, n as u64, n as u64, n_cap);
    MomentValue {
        ensemble,
        k,
        n,
        n_cap,
        value,
    }
}

/// The coefficient `c(mu, 2N)` from the orthogonal Schur-sum reduction:
/// `(-1)^|mu|` if `mu_1 <= 2N+1` and every part of size < 2N+1 appears an
/// even number of times, else 0.
pub fn vertical_strip_coeff(mu: &Partition, n_cap: usize) -> i32 {
    let cap = 2 * n_cap as u32 + 1;
    if mu.part(0) > cap {
        return 0;
    }
    let mut i = 0;
    while i < mu.len() {
        let mut j = i;
        while j < mu.len() && mu.parts()[j] == mu.parts()[i] {
            j += 1;
        }
        if mu.parts()[i] < cap && (j - i) % 2 != 0 {
            return 0;
        }
        i = j;
    }
    if mu.weight() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Same coefficient by its defining alternating sum over vertical strips:
/// `c(mu,2N) = sum_{lambda: mu/lambda vertical strip, lambda_1 <= 2N} (-1)^{|mu/lambda|}`.
pub fn vertical_strip_coeff_brute(mu: &Partition, n_cap: usize) -> i32 {
    let cap = 2 * n_cap as u32;
    let rows = mu.len();
    let mut acc: i64 = 0;
    // choose per-row removals in {0,1}; lambda must stay a partition
    let mut lam = vec![0u32; rows];
    fn rec(mu: &Partition, cap: u32, row: usize, lam: &mut Vec<u32>, acc: &mut i64) {
        if row == lam.len() {
            *acc += if (mu.weight() - lam.iter().map(|&p| p as u64).sum::<u64>()) % 2 == 0 {
                1
            } else {
                -1
            };
            return;
        }
        for d in 0..=1u32 {
            if mu.part(row) < d {
                continue;
            }
            let v = mu.part(row) - d;
            if row > 0 && v > lam[row - 1] {
                continue;
            }
            if row == 0 && v > cap {
                continue;
            }
            lam[row] = v;
            rec(mu, cap, row + 1, lam, acc);
        }
        lam[row] = 0;
    }
    rec(mu, cap, 0, &mut lam, &mut acc);
    acc as i32
}

pub mod brute {
    //! Depth-first reference implementations: materialize every tableau.
    //!
    //! Slow by design; used to pin the dynamic-programming engines on small
    //! shapes and full small grids.

    use super::*;

    /// Content profile of `shape` by explicit row-by-row tableau fill.
    /// Rows weakly increase, columns strictly increase, entries in `{1..2k}`.
    pub fn content_profile_dfs(shape: &Partition, k: usize) -> Vec<BigUint> {
        let weight = shape.weight() as usize;
        let mut profile = vec![BigUint::zero(); weight + 1];
        if shape.len() > 2 * k {
            return profile;
        }
        if shape.is_empty() {
            profile[0] = BigUint::from(1u32);
            return profile;
        }
        let rows: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
        let mut above: Vec<Vec<u32>> = Vec::new();
        fill_rows(&rows, k, 0, &mut above, 0, &mut profile);
        profile
    }

    fn fill_rows(
        rows: &[usize],
        k: usize,
        row: usize,
        above: &mut Vec<Vec<u32>>,
        low_cells: u64,
        profile: &mut Vec<BigUint>,
    ) {
        if row == rows.len() {
            profile[low_cells as usize] += 1u32;
            return;
        }
        let len = rows[row];
        let mut current = vec![0u32; len];
        fill_cells(rows, k, row, 0, above, &mut current, low_cells, profile);
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_cells(
        rows: &[usize],
        k: usize,
        row: usize,
        col: usize,
        above: &mut Vec<Vec<u32>>,
        current: &mut Vec<u32>,
        low_cells: u64,
        profile: &mut Vec<BigUint>,
    ) {
        if col == rows[row] {
            above.push(current.clone());
            fill_rows(rows, k, row + 1, above, low_cells, profile);
            above.pop();
            return;
        }
        let min_left = if col > 0 { current[col - 1] } else { 1 };
        let min_up = if row > 0 { above[row - 1][col] + 1 } else { 1 };
        let lo = min_left.max(min_up);
        for v in lo..=(2 * k as u32) {
            current[col] = v;
            let extra = if v <= k as u32 { 1 } else { 0 };
            fill_cells(rows, k, row, col + 1, above, current, low_cells + extra, profile);
        }
    }

    /// `J(m,n;N)` assembled from [`content_profile_dfs`]; the independent
    /// brute-force Schur evaluation of the module invariants.
    pub fn j_moment_dfs(ensemble: Ensemble, k: usize, m: u64, n: u64, n_cap: usize) -> BigUint {
        let mut total = BigUint::zero();
        for shape in enumerate_shapes(ensemble, k, n_cap, m + n) {
            let profile = content_profile_dfs(&shape, k);
            if let Some(c) = profile.get(m as usize) {
                total += c;
            }
        }
        if ensemble == Ensemble::Orthogonal {
            total *= 2u32;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    // === enumerate_shapes ==================================================

    #[test]
    fn shapes_sym_k1() {
        assert_eq!(
            enumerate_shapes(Ensemble::Symplectic, 1, 1, 2),
            vec![p(&[2])],
            "(sym, k=1, N=1, weight=2) -> [(2)]"
        );
        assert_eq!(
            enumerate_shapes(Ensemble::Symplectic, 1, 1, 4),
            vec![p(&[2, 2])],
            "(4) exceeds 2N=2"
        );
    }

    #[test]
    fn shapes_orth_k1() {
        assert_eq!(
            enumerate_shapes(Ensemble::Orthogonal, 1, 1, 2),
            vec![p(&[1, 1])],
            "(orth, k=1, N=1, weight=2) -> [(1,1)]"
        );
    }

    #[test]
    fn shapes_empty_cases() {
        assert_eq!(enumerate_shapes(Ensemble::Symplectic, 1, 1, 3), vec![]);
        assert_eq!(
            enumerate_shapes(Ensemble::Symplectic, 2, 0, 0),
            vec![Partition::empty()]
        );
    }

    // === count_ssyt =========================================================

    #[test]
    fn count_examples() {
        assert_eq!(count_ssyt(&p(&[2]), 1, 1, 1).unwrap(), BigUint::from(1u32), "[1,2] unique");
        assert_eq!(
            count_ssyt(&p(&[2, 2]), 1, 2, 2).unwrap(),
            BigUint::from(1u32),
            "rows forced to (1,1),(2,2)"
        );
        assert_eq!(count_ssyt(&p(&[2]), 1, 2, 0).unwrap(), BigUint::from(1u32), "all-ones row");
    }

    #[test]
    fn count_rejects_content_mismatch() {
        let err = count_ssyt(&p(&[2]), 1, 1, 0).unwrap_err();
        assert!(matches!(err, Error::ContentMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn count_zero_beyond_alphabet() {
        assert_eq!(count_ssyt(&p(&[1, 1, 1]), 1, 2, 1).unwrap(), BigUint::zero());
    }

    // === moments ============================================================

    #[test]
    fn i_moment_examples() {
        assert_eq!(
            i_moment(Ensemble::Symplectic, 1, 4, 5).value,
            BigUint::from(3u32),
            "I^S_{{d_1,2}}(4;5) = floor((4+2)/2) = 3"
        );
        assert_eq!(i_moment(Ensemble::Symplectic, 2, 0, 3).value, BigUint::from(1u32));
        assert_eq!(
            i_moment(Ensemble::Orthogonal, 2, 1, 3).value,
            BigUint::from(8u32),
            "I^O_{{d_2,2}}(1;3) = 2*C(4,3)"
        );
        assert_eq!(i_moment(Ensemble::Orthogonal, 2, 0, 3).value, BigUint::from(2u32));
    }

    #[test]
    fn j_moment_examples() {
        assert_eq!(j_moment(Ensemble::Symplectic, 1, 0, 0, 2), BigUint::from(1u32));
        assert_eq!(j_moment(Ensemble::Symplectic, 1, 1, 1, 2), BigUint::from(1u32));
        assert_eq!(j_moment(Ensemble::Symplectic, 1, 2, 0, 2), BigUint::from(1u32));
    }

    #[test]
    fn moment_vanishes_beyond_max_weight() {
        assert_eq!(i_moment(Ensemble::Symplectic, 2, 9, 2).value, BigUint::zero(), "n > 2Nk");
        assert_eq!(i_moment(Ensemble::Orthogonal, 1, 4, 1).value, BigUint::zero(), "n > (2N+1)k");
    }

    #[test]
    fn orth_k1_reports_two() {
        // The source text asserts 0 for k=1; enumeration says 2 (shape (n,n),
        // one tableau, mass-2 factor). The engines report the enumerated value.
        for n in 0..=3 {
            assert_eq!(i_moment(Ensemble::Orthogonal, 1, n, 1).value, BigUint::from(2u32));
        }
    }

    // === vertical strips ====================================================

    #[test]
    fn vstrip_examples() {
        assert_eq!(vertical_strip_coeff(&p(&[2, 2]), 2), 1);
        assert_eq!(vertical_strip_coeff(&p(&[1]), 2), 0);
        assert_eq!(vertical_strip_coeff(&Partition::empty(), 0), 1);
    }

    #[test]
    fn vstrip_part_at_cap_needs_no_pairing() {
        assert_eq!(vertical_strip_coeff(&p(&[5]), 2), -1, "part 5 = 2N+1 unpaired");
        assert_eq!(vertical_strip_coeff_brute(&p(&[5]), 2), -1);
        assert_eq!(vertical_strip_coeff(&p(&[6]), 2), 0, "part above 2N+1");
    }

    #[test]
    fn vstrip_paths_agree_small() {
        // all mu with |mu| <= 10, N <= 3
        for n_cap in 0..=3usize {
            for w in 0..=10u64 {
                for mu in all_partitions_of(w) {
                    assert_eq!(
                        vertical_strip_coeff(&mu, n_cap),
                        vertical_strip_coeff_brute(&mu, n_cap),
                        "mu={mu} N={n_cap}"
                    );
                }
            }
        }
    }

    fn all_partitions_of(w: u64) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn rec(remaining: u64, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition::new(stack.clone()).unwrap());
                return;
            }
            let hi = stack.last().copied().unwrap_or(remaining as u32).min(remaining as u32);
            for v in (1..=hi).rev() {
                stack.push(v);
                rec(remaining - v as u64, stack, out);
                stack.pop();
            }
        }
        rec(w, &mut stack, &mut out);
        out
    }

    // === DP vs DFS on small shapes =========================================

    #[test]
    fn profile_matches_dfs_small_shapes() {
        let shapes = [
            p(&[2]),
            p(&[2, 2]),
            p(&[4, 2]),
            p(&[3, 1]),
            p(&[3, 3, 1, 1]),
            p(&[4, 4, 2]),
            p(&[2, 1, 1]),
        ];
        for shape in &shapes {
            for k in 1..=3usize {
                assert_eq!(
                    content_profile(shape, k),
                    brute::content_profile_dfs(shape, k),
                    "shape={shape} k={k}"
                );
            }
        }
    }

    #[test]
    fn profile_row_sums_to_schur_dimension() {
        // total SSYT of shape (2,2) with 4 letters = Weyl dimension of the
        // GL(4) highest-weight (2,2,0,0) module
        let profile = content_profile(&p(&[2, 2]), 2);
        let total: BigUint = profile.iter().sum();
        assert_eq!(total, BigUint::from(20u32), "s_(2,2)(1^4) = 20");
    }

    // === functional equations and symmetry =================================

    #[test]
    fn functional_equations() {
        for k in 1..=3usize {
            for n_cap in 0..=4usize {
                let top_s = 2 * n_cap * k;
                for n in 0..=top_s {
                    assert_eq!(
                        i_moment(Ensemble::Symplectic, k, n, n_cap).value,
                        i_moment(Ensemble::Symplectic, k, top_s - n, n_cap).value,
                        "sym k={k} N={n_cap} n={n}"
                    );
                }
                let top_o = (2 * n_cap + 1) * k;
                for n in 0..=top_o {
                    assert_eq!(
                        i_moment(Ensemble::Orthogonal, k, n, n_cap).value,
                        i_moment(Ensemble::Orthogonal, k, top_o - n, n_cap).value,
                        "orth k={k} N={n_cap} n={n}"
                    );
                }
            }
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn j_symmetric_in_m_n(
            k in 1usize..=2,
            n_cap in 0usize..=2,
            m in 0u64..=6,
            n in 0u64..=6,
        ) {
            let sym = j_moment(Ensemble::Symplectic, k, m, n, n_cap);
            let sym_t = j_moment(Ensemble::Symplectic, k, n, m, n_cap);
            proptest::prop_assert_eq!(sym, sym_t);
            let orth = j_moment(Ensemble::Orthogonal, k, m, n, n_cap);
            let orth_t = j_moment(Ensemble::Orthogonal, k, n, m, n_cap);
            proptest::prop_assert_eq!(orth, orth_t);
        }
    }
}
