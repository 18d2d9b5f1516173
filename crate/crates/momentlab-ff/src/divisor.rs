//! The divisor functions d_l on monic polynomials and the quadratic
//! character of the constant term.

use momentlab_core::error::{Error, Result};

use crate::poly::{mod_pow, require_odd_prime, FqPoly};

/// d_l(f) for every monic f of degree at most `n_max`, built by repeated
/// Dirichlet convolution with the constant-1 function; values are indexed
/// by (degree, monic index).
#[derive(Debug, Clone)]
pub struct DivisorTable {
    pub q: u64,
    pub ell: usize,
    pub n_max: usize,
    values: Vec<Vec<u64>>,
}

impl DivisorTable {
    pub fn get(&self, f: &FqPoly) -> Result<u64> {
        if !f.is_monic() {
            return Err(Error::Domain(
                "the divisor functions are defined on monic polynomials".into(),
            ));
        }
        let deg = f.degree().unwrap();
        if deg > self.n_max {
            return Err(Error::Range(format!(
                "degree {deg} exceeds the table bound {}",
                self.n_max
            )));
        }
        Ok(self.values[deg][f.monic_index() as usize])
    }

    pub fn get_by_index(&self, deg: usize, idx: u64) -> u64 {
        self.values[deg][idx as usize]
    }
}

/// Builds the d_l table up to degree `n_max` over F_q.
pub fn divisor_table(q: u64, ell: usize, n_max: usize) -> Result<DivisorTable> {
    require_odd_prime(q)?;
    if ell == 0 {
        return Err(Error::Domain("the convolution depth l must be positive".into()));
    }
    let strata: Vec<u64> = (0..=n_max).map(|n| q.pow(n as u32)).collect();
    let mut values: Vec<Vec<u64>> = strata
        .iter()
        .map(|&count| vec![1u64; count as usize])
        .collect();
    for _ in 1..ell {
        let mut next: Vec<Vec<u64>> = strata
            .iter()
            .map(|&count| vec![0u64; count as usize])
            .collect();
        for n in 0..=n_max {
            for a in 0..=n {
                let b = n - a;
                for ga in 0..strata[a] {
                    let g = FqPoly::monic_from_index(q, a, ga);
                    let weight = values[a][ga as usize];
                    for hb in 0..strata[b] {
                        let h = FqPoly::monic_from_index(q, b, hb);
                        let prod = g.mul(&h);
                        next[n][prod.monic_index() as usize] += weight;
                    }
                }
            }
        }
        for n in 0..=n_max {
            for (slot, fresh) in values[n].iter_mut().zip(&next[n]) {
                *slot = *fresh;
            }
        }
    }
    Ok(DivisorTable {
        q,
        ell,
        n_max,
        values,
    })
}

/// chi_2(f) = chi_2(f(0)): 0 on constant term zero, otherwise the
/// quadratic character of f(0) in F_q by the Euler criterion.
pub fn chi2(q: u64, f: &FqPoly) -> Result<i64> {
    require_odd_prime(q)?;
    Ok(chi2_scalar(q, f.constant_term()))
}

pub fn chi2_scalar(q: u64, c: u64) -> i64 {
    let c = c % q;
    if c == 0 {
        return 0;
    }
    if mod_pow(q, c, (q - 1) / 2) == 1 {
        1
    } else {
        -1
    }
}

/// The exact character sum sum_{f in M_n, f(0) != 0} d_l(f) chi_2(f);
/// the orthogonality of chi_2 forces 0 for n > 0 and 1 for n = 0.
pub fn chi2_sum_vanishes(q: u64, ell: usize, n: usize) -> Result<i64> {
    let table = divisor_table(q, ell, n)?;
    let mut total = 0i64;
    for idx in 0..q.pow(n as u32) {
        let sign = if n == 0 {
            1
        } else {
            chi2_scalar(q, idx % q)
        };
        if sign == 0 {
            continue;
        }
        total += sign * table.get_by_index(n, idx) as i64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d1_is_identically_one() {
        let table = divisor_table(3, 1, 3).unwrap();
        for idx in 0..27 {
            assert_eq!(table.get_by_index(3, idx), 1);
        }
    }

    #[test]
    fn d2_of_t_squared_counts_ordered_factorizations() {
        let table = divisor_table(3, 2, 2).unwrap();
        let t_squared = FqPoly::new(3, vec![0, 0, 1]);
        assert_eq!(table.get(&t_squared).unwrap(), 3);
    }

    #[test]
    fn d_ell_of_one_is_one() {
        for ell in 1..=4 {
            let table = divisor_table(5, ell, 1).unwrap();
            assert_eq!(table.get(&FqPoly::one(5)).unwrap(), 1);
        }
    }

    #[test]
    fn cubic_stratum_sum_matches_the_generating_function() {
        let table = divisor_table(3, 2, 3).unwrap();
        let mut total = 0u64;
        for idx in 0..27 {
            if idx % 3 == 0 {
                continue;
            }
            total += table.get_by_index(3, idx);
        }
        assert_eq!(total, 60);
    }

    #[test]
    fn full_stratum_sums_match_the_binomial_formula() {
        let q = 5u64;
        for ell in 1..=3usize {
            let table = divisor_table(q, ell, 3).unwrap();
            for n in 0..=3usize {
                let total: u64 = (0..q.pow(n as u32))
                    .map(|idx| table.get_by_index(n, idx))
                    .sum();
                let binom: u64 = {
                    let mut b = 1u64;
                    for i in 0..n {
                        b = b * (ell as u64 + i as u64) / (i as u64 + 1);
                    }
                    b
                };
                assert_eq!(total, q.pow(n as u32) * binom, "ell {ell} n {n}");
            }
        }
    }

    #[test]
    fn quadratic_character_values_mod_5() {
        assert_eq!(chi2(5, &FqPoly::new(5, vec![1, 1])).unwrap(), 1);
        assert_eq!(chi2(5, &FqPoly::new(5, vec![2, 1])).unwrap(), -1);
        assert_eq!(chi2(5, &FqPoly::gen(5)).unwrap(), 0);
    }

    #[test]
    fn twisted_divisor_sums_collapse() {
        assert_eq!(chi2_sum_vanishes(5, 2, 3).unwrap(), 0);
        assert_eq!(chi2_sum_vanishes(5, 2, 0).unwrap(), 1);
        assert_eq!(chi2_sum_vanishes(3, 1, 2).unwrap(), 0);
        for n in 1..=4 {
            assert_eq!(chi2_sum_vanishes(3, 2, n).unwrap(), 0, "n = {n}");
        }
    }
}
