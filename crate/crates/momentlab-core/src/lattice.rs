//! Lattice-point counts for the dilated regions V^S_c and V^O_c: nested
//! interval enumeration over interlacing chains of partition rows, with the
//! even-sublattice constraint on the symplectic top row.
//!
//! A point of the symplectic model is a chain of rows u^(1), ..., u^(2k)
//! with u^(s) of length s, interlacing consecutively, where the row-k
//! weight is pinned to n = c * dilate, the top-row weight to 2n, and every
//! free top-row coordinate is even. The orthogonal model stops at row
//! 2k - 1, whose odd-indexed coordinates carry the weight constraint; its
//! count is half the orthogonal moment.

use num::BigUint;

use crate::error::{Error, Result};
use crate::Ensemble;

/// Explicit inequality and lattice data for one dilated region.
#[derive(Debug, Clone)]
pub struct PolytopeModel {
    pub ensemble: Ensemble,
    pub k: usize,
    pub c_num: u64,
    pub c_den: u64,
    /// Pairs (a, b) of coordinates (i, j), 1-based, meaning u_a <= u_b.
    pub inequalities: Vec<((usize, usize), (usize, usize))>,
    /// Coordinates confined to even integers in the dilated model.
    pub even_coords: Vec<(usize, usize)>,
}

impl PolytopeModel {
    pub fn new(ensemble: Ensemble, k: usize, c_num: u64, c_den: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("k must be positive".into()));
        }
        if c_den == 0 {
            return Err(Error::Domain("c must have a positive denominator".into()));
        }
        let g = gcd(c_num.max(1), c_den);
        let (c_num, c_den) = (c_num / g, c_den / g);
        if c_num > k as u64 * c_den {
            return Err(Error::Domain(format!(
                "c = {c_num}/{c_den} lies outside [0, k]"
            )));
        }
        let rows = match ensemble {
            Ensemble::Symplectic => 2 * k,
            Ensemble::Orthogonal => 2 * k - 1,
        };
        let mut inequalities = Vec::new();
        for s in 1..rows {
            for r in 1..=s {
                inequalities.push(((r + 1, s + 1), (r, s)));
                inequalities.push(((r, s), (r, s + 1)));
            }
        }
        let even_coords = match ensemble {
            Ensemble::Symplectic => (2..=2 * k).map(|i| (i, 2 * k)).collect(),
            Ensemble::Orthogonal => Vec::new(),
        };
        Ok(PolytopeModel {
            ensemble,
            k,
            c_num,
            c_den,
            inequalities,
            even_coords,
        })
    }

    /// Number of rows in the chain: 2k (symplectic) or 2k - 1 (orthogonal).
    pub fn rows(&self) -> usize {
        match self.ensemble {
            Ensemble::Symplectic => 2 * self.k,
            Ensemble::Orthogonal => 2 * self.k - 1,
        }
    }

    /// Number of free coordinates.
    pub fn dimension(&self) -> usize {
        let rows = self.rows();
        let total = rows * (rows + 1) / 2;
        let resolved = if self.rows() == self.k { 1 } else { 2 };
        total.saturating_sub(resolved)
    }

    /// The weight n = c * dilate hit by this model at the given dilation.
    pub fn target(&self, dilate: u64) -> Result<u64> {
        let expected_parity = match self.ensemble {
            Ensemble::Symplectic => 0,
            Ensemble::Orthogonal => 1,
        };
        if dilate == 0 || dilate % 2 != expected_parity {
            return Err(Error::Domain(format!(
                "{} dilate must be a positive {} integer, got {dilate}",
                self.ensemble.name(),
                if expected_parity == 0 { "even" } else { "odd" },
            )));
        }
        if (self.c_num * dilate) % self.c_den != 0 {
            return Err(Error::Domain(format!(
                "denominator {} of c does not divide the dilate {dilate}",
                self.c_den
            )));
        }
        Ok(self.c_num * dilate / self.c_den)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    num::integer::gcd(a, b)
}

/// Number of lattice points in the dilated region. Equals I^S(c*2N; N) for
/// the symplectic model at dilate 2N and I^O(c*(2N+1); N)/2 for the
/// orthogonal model at dilate 2N+1.
pub fn lattice_count(model: &PolytopeModel, dilate: u64) -> Result<BigUint> {
    let n = model.target(dilate)?;
    let mut walker = Walker {
        model,
        d: dilate,
        n,
        count: 0,
        points: None,
    };
    walker.walk();
    Ok(BigUint::from(walker.count))
}

/// Fully materialized chains for small models; rows are listed from the
/// top row down to row 1.
pub fn lattice_points(model: &PolytopeModel, dilate: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let n = model.target(dilate)?;
    let mut walker = Walker {
        model,
        d: dilate,
        n,
        count: 0,
        points: Some((Vec::new(), Vec::new())),
    };
    walker.walk();
    Ok(walker.points.take().map(|(_, pts)| pts).unwrap_or_default())
}

struct Walker<'a> {
    model: &'a PolytopeModel,
    d: u64,
    n: u64,
    count: u128,
    points: Option<(Vec<Vec<u64>>, Vec<Vec<Vec<u64>>>)>,
}

impl Walker<'_> {
    fn walk(&mut self) {
        let rows = self.model.rows();
        if rows == 1 {
            if self.n <= self.d {
                self.count += 1;
                if let Some((_, pts)) = &mut self.points {
                    pts.push(vec![vec![self.n]]);
                }
            }
            return;
        }
        let mut row = vec![0u64; rows];
        self.top_free(&mut row, 1, 0);
    }

    fn emit_row(&mut self, row: &[u64]) {
        let s = row.len();
        if let Some((stack, _)) = &mut self.points {
            stack.push(row.to_vec());
        }
        let t = s - 1;
        if t == 1 && self.model.k > 1 {
            self.final_interval(row);
        } else {
            let mut lower = vec![0u64; t];
            if t == self.model.k {
                self.weight_free(row, &mut lower, 1, 0);
            } else {
                let (w_lo, w_hi) = if t > self.model.k {
                    (self.n, 2 * self.n)
                } else {
                    (0, self.n)
                };
                let suffix = suffix_bounds(row, t);
                self.interval_free(row, &mut lower, 0, 0, &suffix, w_lo, w_hi);
            }
        }
        if let Some((stack, _)) = &mut self.points {
            stack.pop();
        }
    }

    /// Row 1 for k >= 2 carries no constraint beyond interlacing, so it
    /// contributes a whole interval at once.
    fn final_interval(&mut self, upper: &[u64]) {
        let lo = upper[1];
        let hi = upper[0];
        if hi < lo {
            return;
        }
        if let Some((stack, pts)) = &mut self.points {
            for v in lo..=hi {
                let mut chain = stack.clone();
                chain.push(vec![v]);
                pts.push(chain);
            }
        }
        self.count += u128::from(hi - lo + 1);
    }

    fn leaf(&mut self, row: &[u64]) {
        if row.len() == 1 {
            self.count += 1;
            if let Some((stack, pts)) = &mut self.points {
                let mut chain = stack.clone();
                chain.push(row.to_vec());
                pts.push(chain);
            }
            return;
        }
        self.emit_row(row);
    }

    /// Free coordinates of the top row, enumerated left to right with the
    /// resolved first coordinate checked at the end.
    fn top_free(&mut self, row: &mut Vec<u64>, idx: usize, sum_tracked: u64) {
        let s = row.len();
        let sym = self.model.ensemble == Ensemble::Symplectic;
        if idx == s {
            let budget = if sym { 2 * self.n } else { self.n };
            let Some(u1) = budget.checked_sub(sum_tracked) else {
                return;
            };
            if u1 > self.d || (s > 1 && u1 < row[1]) {
                return;
            }
            row[0] = u1;
            let row_copy = row.clone();
            self.leaf(&row_copy);
            return;
        }
        let step = if sym { 2 } else { 1 };
        let hi = if idx >= 2 { row[idx - 1] } else { self.d };
        let mut v = 0;
        while v <= hi {
            let tracked = if sym || idx % 2 == 0 { v } else { 0 };
            if sum_tracked + tracked
                > if sym {
                    2 * self.n
                } else {
                    self.n
                }
            {
                break;
            }
            row[idx] = v;
            self.top_free(row, idx + 1, sum_tracked + tracked);
            v += step;
        }
        row[idx] = 0;
    }

    /// Free coordinates of row k, with the first coordinate resolved by
    /// the weight constraint.
    fn weight_free(&mut self, upper: &[u64], row: &mut Vec<u64>, idx: usize, sum: u64) {
        let s = row.len();
        if idx == s {
            let Some(u1) = self.n.checked_sub(sum) else {
                return;
            };
            if u1 > upper[0] || u1 < upper[1] || (s > 1 && u1 < row[1]) {
                return;
            }
            row[0] = u1;
            let row_copy = row.clone();
            self.leaf(&row_copy);
            return;
        }
        let lo = upper[idx + 1];
        let hi = upper[idx];
        for v in lo..=hi {
            if sum + v > self.n {
                break;
            }
            row[idx] = v;
            self.weight_free(upper, row, idx + 1, sum + v);
        }
        row[idx] = 0;
    }

    /// Rows other than row k, row 1, and the top: all coordinates free,
    /// weight confined to [n, 2n] above row k and [0, n] below it because
    /// the chain is nested through row k.
    #[allow(clippy::too_many_arguments)]
    fn interval_free(
        &mut self,
        upper: &[u64],
        row: &mut Vec<u64>,
        idx: usize,
        sum: u64,
        suffix: &SuffixBounds,
        w_lo: u64,
        w_hi: u64,
    ) {
        let s = row.len();
        if idx == s {
            let row_copy = row.clone();
            self.emit_row(&row_copy);
            return;
        }
        let lo = upper[idx + 1];
        let hi = upper[idx];
        for v in lo..=hi {
            let w = sum + v;
            if w + suffix.hi[idx + 1] < w_lo {
                continue;
            }
            if w + suffix.lo[idx + 1] > w_hi {
                break;
            }
            row[idx] = v;
            self.interval_free(upper, row, idx + 1, w, suffix, w_lo, w_hi);
        }
        row[idx] = 0;
    }
}

struct SuffixBounds {
    lo: Vec<u64>,
    hi: Vec<u64>,
}

/// Static per-coordinate interval bounds for a row of length s under the
/// given upper row, summed from each position to the end.
fn suffix_bounds(upper: &[u64], s: usize) -> SuffixBounds {
    let mut lo = vec![0u64; s + 1];
    let mut hi = vec![0u64; s + 1];
    for t in (0..s).rev() {
        lo[t] = lo[t + 1] + upper[t + 1];
        hi[t] = hi[t + 1] + upper[t];
    }
    SuffixBounds { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ssyt;

    fn model(ensemble: Ensemble, k: usize, c_num: u64, c_den: u64) -> PolytopeModel {
        PolytopeModel::new(ensemble, k, c_num, c_den).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn sym_k1_half_dilate_eight() {
        let m = model(Ensemble::Symplectic, 1, 1, 2);
        assert_eq!(lattice_count(&m, 8).unwrap(), big(3));
    }

    #[test]
    fn sym_k1_half_dilate_two() {
        let m = model(Ensemble::Symplectic, 1, 1, 2);
        assert_eq!(lattice_count(&m, 2).unwrap(), big(1));
    }

    #[test]
    fn orth_k2_third_dilate_three() {
        let m = model(Ensemble::Orthogonal, 2, 1, 3);
        assert_eq!(lattice_count(&m, 3).unwrap(), big(4));
    }

    #[test]
    fn divisibility_and_parity_are_enforced() {
        let m = model(Ensemble::Symplectic, 1, 1, 2);
        assert!(matches!(lattice_count(&m, 7), Err(Error::Domain(_))));
        let m = model(Ensemble::Orthogonal, 2, 1, 3);
        assert!(matches!(lattice_count(&m, 6), Err(Error::Domain(_))));
        assert!(matches!(lattice_count(&m, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn c_outside_range_is_rejected() {
        assert!(matches!(
            PolytopeModel::new(Ensemble::Symplectic, 1, 3, 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn orth_k1_counts_one_chain() {
        let m = model(Ensemble::Orthogonal, 1, 1, 3);
        assert_eq!(lattice_count(&m, 3).unwrap(), big(1));
        assert_eq!(lattice_count(&m, 9).unwrap(), big(1));
        assert_eq!(m.dimension(), 0);
    }

    #[test]
    fn dimensions_match_the_region_formulas() {
        for k in 1..=3usize {
            let sym = model(Ensemble::Symplectic, k, 1, 2);
            assert_eq!(sym.dimension(), 2 * k * k + k - 2);
            if k >= 2 {
                let orth = model(Ensemble::Orthogonal, k, 1, 1);
                assert_eq!(orth.dimension(), 2 * k * k - k - 2);
            }
        }
    }

    #[test]
    fn enumerated_points_satisfy_every_inequality() {
        for (ensemble, k, c_num, c_den, dilate) in [
            (Ensemble::Symplectic, 2usize, 1u64, 2u64, 6u64),
            (Ensemble::Orthogonal, 2, 2, 3, 3),
            (Ensemble::Symplectic, 1, 1, 2, 8),
        ] {
            let m = model(ensemble, k, c_num, c_den);
            let points = lattice_points(&m, dilate).unwrap();
            assert_eq!(
                BigUint::from(points.len() as u64),
                lattice_count(&m, dilate).unwrap()
            );
            let rows = m.rows();
            let coord = |chain: &Vec<Vec<u64>>, i: usize, j: usize| -> u64 {
                chain[rows - j][i - 1]
            };
            for chain in &points {
                for ((ai, aj), (bi, bj)) in &m.inequalities {
                    assert!(
                        coord(chain, *ai, *aj) <= coord(chain, *bi, *bj),
                        "u[{ai}][{aj}] <= u[{bi}][{bj}] violated in {chain:?}"
                    );
                }
                for (i, j) in &m.even_coords {
                    assert_eq!(coord(chain, *i, *j) % 2, 0, "even coordinate ({i},{j})");
                }
                for coords in chain {
                    for v in coords {
                        assert!(*v <= dilate, "coordinate exceeds the dilate");
                    }
                }
            }
        }
    }

    #[test]
    fn counts_match_tableau_moments_on_small_dilates() {
        for (c_num, c_den) in [(1u64, 2u64), (1, 4), (1, 1)] {
            for k in 1..=2usize {
                let m = model(Ensemble::Symplectic, k, c_num, c_den);
                let mut dilate = 2;
                while dilate <= 8 {
                    if (c_num * dilate) % c_den == 0 {
                        let n = (c_num * dilate / c_den) as usize;
                        let n_cap = (dilate / 2) as usize;
                        let expected = ssyt::i_moment(Ensemble::Symplectic, k, n, n_cap).value;
                        assert_eq!(
                            lattice_count(&m, dilate).unwrap(),
                            expected,
                            "sym k={k} c={c_num}/{c_den} dilate={dilate}"
                        );
                    }
                    dilate += 2;
                }
            }
        }
        for (c_num, c_den) in [(1u64, 3u64), (1, 1), (2, 3)] {
            for k in 1..=2usize {
                let m = model(Ensemble::Orthogonal, k, c_num, c_den);
                let mut dilate = 1;
                while dilate <= 9 {
                    if (c_num * dilate) % c_den == 0 {
                        let n = (c_num * dilate / c_den) as usize;
                        let n_cap = ((dilate - 1) / 2) as usize;
                        let expected = ssyt::i_moment(Ensemble::Orthogonal, k, n, n_cap).value;
                        assert_eq!(
                            lattice_count(&m, dilate).unwrap() * 2u32,
                            expected,
                            "orth k={k} c={c_num}/{c_den} dilate={dilate}"
                        );
                    }
                    dilate += 2;
                }
            }
        }
    }
}
