//! Dense exact-rational bivariate polynomials, polynomial matrices with two
//! determinant engines, and truncated bivariate power series.
//!
//! The polynomial layer does the exact determinant work for the
//! generating-function engine, including certified division by powers of
//! (y - x); the series layer holds truncated expansions where only
//! coefficients up to fixed orders are meaningful.

use num::{BigInt, BigRational, One, Zero};

use crate::closed::binomial;
use crate::error::{Error, Result};

fn binom_rat(n: u64, r: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(binomial(n, r)))
}

/// Polynomial in x and y with exact rational coefficients, stored as a
/// rectangular grid `coeffs[i][j]` for the x^i y^j coefficient. The zero
/// polynomial is the empty grid; otherwise the last row and last column
/// each contain a nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<BigRational>>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(ex: usize, ey: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut grid = vec![vec![BigRational::zero(); ey + 1]; ex + 1];
        grid[ex][ey] = c;
        BivariatePoly { coeffs: grid }
    }

    pub fn from_grid(grid: Vec<Vec<BigRational>>) -> Self {
        Self::normalized(grid)
    }

    fn normalized(mut grid: Vec<Vec<BigRational>>) -> Self {
        while let Some(row) = grid.last() {
            if row.iter().all(Zero::is_zero) {
                grid.pop();
            } else {
                break;
            }
        }
        if grid.is_empty() {
            return Self::zero();
        }
        let width = grid
            .iter()
            .map(|row| {
                row.iter()
                    .rposition(|c| !c.is_zero())
                    .map_or(0, |p| p + 1)
            })
            .max()
            .unwrap_or(0);
        for row in &mut grid {
            row.resize(width, BigRational::zero());
        }
        BivariatePoly { coeffs: grid }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in x; 0 for the zero polynomial.
    pub fn deg_x(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Degree in y; 0 for the zero polynomial.
    pub fn deg_y(&self) -> usize {
        self.coeffs.first().map_or(0, |r| r.len().saturating_sub(1))
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let rows = (self.coeffs.len()).max(other.coeffs.len());
        let cols = (self.coeffs.first().map_or(0, Vec::len))
            .max(other.coeffs.first().map_or(0, Vec::len));
        let mut grid = vec![vec![BigRational::zero(); cols]; rows];
        for (i, j, c) in self.cells() {
            grid[i][j] += c;
        }
        for (i, j, c) in other.cells() {
            grid[i][j] += c;
        }
        Self::normalized(grid)
    }

    pub fn neg(&self) -> Self {
        let grid = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|c| -c.clone()).collect())
            .collect();
        BivariatePoly { coeffs: grid }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let rows = self.deg_x() + other.deg_x() + 1;
        let cols = self.deg_y() + other.deg_y() + 1;
        let mut grid = vec![vec![BigRational::zero(); cols]; rows];
        for (i1, j1, c1) in self.cells() {
            for (i2, j2, c2) in other.cells() {
                grid[i1 + i2][j1 + j2] += c1 * c2;
            }
        }
        Self::normalized(grid)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let grid = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|v| v * c).collect())
            .collect();
        BivariatePoly { coeffs: grid }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for row in self.coeffs.iter().rev() {
            let mut row_val = BigRational::zero();
            for c in row.iter().rev() {
                row_val = row_val * y + c;
            }
            acc = acc * x + row_val;
        }
        acc
    }

    /// Exact division; errors unless `self = q * d` for some polynomial q.
    pub fn divide_exact(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InexactDivision(
                "division by the zero polynomial".into(),
            ));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dx = d.deg_x();
        let d_lead = &d.coeffs[dx];
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while !rem.is_zero() && rem.deg_x() >= dx {
            let r_lead = &rem.coeffs[rem.deg_x()];
            let q_row = uni_div_exact(r_lead, d_lead).ok_or_else(|| {
                Error::InexactDivision("leading x-coefficient does not divide in Q[y]".into())
            })?;
            let shift = rem.deg_x() - dx;
            let mut grid = vec![vec![BigRational::zero(); q_row.len()]; shift + 1];
            grid[shift] = q_row;
            let term = Self::normalized(grid);
            rem = rem.sub(&term.mul(d));
            quo = quo.add(&term);
        }
        if rem.is_zero() {
            Ok(quo)
        } else {
            Err(Error::InexactDivision(format!(
                "nonzero remainder of x-degree {} remains",
                rem.deg_x()
            )))
        }
    }

    /// Substitute y = x + t, returning a polynomial in (x, t).
    pub fn subst_y_eq_x_plus_t(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let rows = self.deg_x() + self.deg_y() + 1;
        let cols = self.deg_y() + 1;
        let mut grid = vec![vec![BigRational::zero(); cols]; rows];
        for (i, j, c) in self.cells() {
            for l in 0..=j {
                grid[i + j - l][l] += c * binom_rat(j as u64, l as u64);
            }
        }
        Self::normalized(grid)
    }

    /// Divide by t^m where t is the second variable; every coefficient of
    /// t^l for l < m must vanish identically, else the division is inexact.
    pub fn extract_t_power(&self, m: usize) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        for (i, j, _) in self.cells() {
            if j < m {
                return Err(Error::InexactDivision(format!(
                    "coefficient of x^{i} t^{j} is nonzero, blocking division by t^{m}"
                )));
            }
        }
        let grid = self
            .coeffs
            .iter()
            .map(|row| row.iter().skip(m).cloned().collect())
            .collect();
        Ok(Self::normalized(grid))
    }

    /// Substitute t = y - x into a polynomial in (x, t).
    pub fn subst_t_eq_y_minus_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let rows = self.deg_x() + self.deg_y() + 1;
        let cols = self.deg_y() + 1;
        let mut grid = vec![vec![BigRational::zero(); cols]; rows];
        for (a, l, c) in self.cells() {
            for r in 0..=l {
                let mut term = c * binom_rat(l as u64, r as u64);
                if (l - r) % 2 == 1 {
                    term = -term;
                }
                grid[a + l - r][r] += term;
            }
        }
        Self::normalized(grid)
    }

    /// Certified exact division by (y - x)^m via the substitution y = x + t.
    pub fn div_y_minus_x_pow(&self, m: usize) -> Result<Self> {
        Ok(self
            .subst_y_eq_x_plus_t()
            .extract_t_power(m)?
            .subst_t_eq_y_minus_x())
    }
}

/// Exact quotient in Q[y] of dense coefficient vectors, or None when the
/// division leaves a remainder.
fn uni_div_exact(num: &[BigRational], den: &[BigRational]) -> Option<Vec<BigRational>> {
    let dd = den.iter().rposition(|c| !c.is_zero())?;
    let mut rem: Vec<BigRational> = num.to_vec();
    let mut nd = rem.iter().rposition(|c| !c.is_zero());
    let mut quo = vec![BigRational::zero(); num.len().saturating_sub(dd)];
    while let Some(top) = nd {
        if top < dd {
            return None;
        }
        let q = &rem[top] / &den[dd];
        let shift = top - dd;
        for (i, dc) in den.iter().enumerate().take(dd + 1) {
            let delta = &q * dc;
            rem[shift + i] -= delta;
        }
        quo[shift] = q;
        nd = rem.iter().rposition(|c| !c.is_zero());
    }
    Some(quo)
}

/// Square matrix of bivariate polynomials with two independent determinant
/// engines: memoized cofactor expansion and fraction-free Bareiss
/// elimination with exact polynomial division.
#[derive(Debug, Clone)]
pub struct PolyMatrix {
    n: usize,
    rows: Vec<Vec<BivariatePoly>>,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<BivariatePoly>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("matrix must be square and nonempty".into()));
        }
        Ok(PolyMatrix { n, rows })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BivariatePoly {
        &self.rows[i][j]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn determinant(&self) -> BivariatePoly {
        if self.n <= 6 {
            self.determinant_cofactor()
        } else {
            self.determinant_bareiss()
                .expect("Bareiss divisions are exact by the Desnanot-Jacobi identity")
        }
    }

    /// Column-subset dynamic program over cofactor expansions; exponential
    /// in the dimension but exact and division-free.
    pub fn determinant_cofactor(&self) -> BivariatePoly {
        let n = self.n;
        let full = (1usize << n) - 1;
        let mut dp: Vec<Option<BivariatePoly>> = vec![None; 1 << n];
        dp[0] = Some(BivariatePoly::one());
        for i in 0..n {
            let mut next: Vec<Option<BivariatePoly>> = vec![None; 1 << n];
            for mask in 0..=full {
                let Some(sub) = dp[mask].take() else {
                    continue;
                };
                for j in 0..n {
                    if mask & (1 << j) != 0 || self.rows[i][j].is_zero() {
                        continue;
                    }
                    let mut term = sub.mul(&self.rows[i][j]);
                    if (mask >> (j + 1)).count_ones() % 2 == 1 {
                        term = term.neg();
                    }
                    let slot = &mut next[mask | (1 << j)];
                    *slot = Some(match slot.take() {
                        Some(acc) => acc.add(&term),
                        None => term,
                    });
                }
            }
            dp = next;
        }
        dp[full].take().unwrap_or_else(BivariatePoly::zero)
    }

    /// Fraction-free elimination; every interior division is exact in
    /// Q[x,y], and a failed division signals an implementation bug.
    pub fn determinant_bareiss(&self) -> Result<BivariatePoly> {
        let n = self.n;
        let mut m = self.rows.clone();
        let mut negate = false;
        let mut prev = BivariatePoly::one();
        for r in 0..n {
            if m[r][r].is_zero() {
                let Some(pivot) = (r + 1..n).find(|&s| !m[s][r].is_zero()) else {
                    return Ok(BivariatePoly::zero());
                };
                m.swap(r, pivot);
                negate = !negate;
            }
            for i in r + 1..n {
                for j in r + 1..n {
                    let num = m[r][r].mul(&m[i][j]).sub(&m[i][r].mul(&m[r][j]));
                    m[i][j] = num.divide_exact(&prev)?;
                }
                m[i][r] = BivariatePoly::zero();
            }
            prev = m[r][r].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { det.neg() } else { det })
    }
}

/// Bivariate power series truncated to orders (d_x, d_y): the full
/// rectangular grid of coefficients c[i][j] for x^i y^j with i <= d_x,
/// j <= d_y. All arithmetic truncates eagerly to the same orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    d_x: usize,
    d_y: usize,
    c: Vec<Vec<BigRational>>,
}

impl BivariateSeries {
    pub fn zero(d_x: usize, d_y: usize) -> Self {
        BivariateSeries {
            d_x,
            d_y,
            c: vec![vec![BigRational::zero(); d_y + 1]; d_x + 1],
        }
    }

    pub fn one(d_x: usize, d_y: usize) -> Self {
        let mut s = Self::zero(d_x, d_y);
        s.c[0][0] = BigRational::one();
        s
    }

    pub fn from_poly(p: &BivariatePoly, d_x: usize, d_y: usize) -> Self {
        let mut s = Self::zero(d_x, d_y);
        for i in 0..=d_x {
            for j in 0..=d_y {
                s.c[i][j] = p.coeff(i, j);
            }
        }
        s
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.d_x, self.d_y)
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigRational {
        &self.c[i][j]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, v: BigRational) {
        self.c[i][j] = v;
    }

    fn assert_same_orders(&self, other: &Self) {
        assert_eq!(
            (self.d_x, self.d_y),
            (other.d_x, other.d_y),
            "series arithmetic requires matching truncation orders"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_orders(other);
        let mut out = self.clone();
        for i in 0..=self.d_x {
            for j in 0..=self.d_y {
                out.c[i][j] += &other.c[i][j];
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_orders(other);
        let mut out = Self::zero(self.d_x, self.d_y);
        for i1 in 0..=self.d_x {
            for j1 in 0..=self.d_y {
                if self.c[i1][j1].is_zero() {
                    continue;
                }
                for i2 in 0..=self.d_x - i1 {
                    for j2 in 0..=self.d_y - j1 {
                        if other.c[i2][j2].is_zero() {
                            continue;
                        }
                        let prod = &self.c[i1][j1] * &other.c[i2][j2];
                        out.c[i1 + i2][j1 + j2] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = self.clone();
        for row in &mut out.c {
            for v in row.iter_mut() {
                *v = &*v * r;
            }
        }
        out
    }

    /// Exact series division. Supported when the divisor's lowest form is a
    /// single monomial c x^a y^b: the dividend must be divisible by that
    /// monomial, after which the divisor is a unit series.
    pub fn divide(&self, other: &Self) -> Result<Self> {
        self.assert_same_orders(other);
        let low = other
            .c
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(j, _)| (i + j, i, j))
            })
            .min();
        let Some((low_deg, _, _)) = low else {
            return Err(Error::InexactDivision("division by the zero series".into()));
        };
        let lows: Vec<(usize, usize)> = other
            .c
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(j, _)| (i, j))
            })
            .filter(|(i, j)| i + j == low_deg)
            .collect();
        if lows.len() != 1 {
            return Err(Error::InexactDivision(
                "divisor's lowest form is not a monomial".into(),
            ));
        }
        let (a, b) = lows[0];
        for i in 0..=self.d_x {
            for j in 0..=self.d_y {
                if !self.c[i][j].is_zero() && (i < a || j < b) {
                    return Err(Error::InexactDivision(format!(
                        "dividend coefficient at x^{i} y^{j} is not divisible by x^{a} y^{b}"
                    )));
                }
            }
        }
        let mut num = Self::zero(self.d_x, self.d_y);
        let mut den = Self::zero(self.d_x, self.d_y);
        for i in a..=self.d_x {
            for j in b..=self.d_y {
                num.c[i - a][j - b] = self.c[i][j].clone();
                den.c[i - a][j - b] = other.c[i][j].clone();
            }
        }
        let unit = den.c[0][0].clone();
        let mut quo = Self::zero(self.d_x, self.d_y);
        for i in 0..=self.d_x {
            for j in 0..=self.d_y {
                let mut acc = num.c[i][j].clone();
                for i2 in 0..=i {
                    for j2 in 0..=j {
                        if i2 == i && j2 == j {
                            continue;
                        }
                        if !quo.c[i2][j2].is_zero() && !den.c[i - i2][j - j2].is_zero() {
                            acc -= &quo.c[i2][j2] * &den.c[i - i2][j - j2];
                        }
                    }
                }
                quo.c[i][j] = acc / &unit;
            }
        }
        Ok(quo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn x() -> BivariatePoly {
        BivariatePoly::monomial(1, 0, rat(1))
    }

    fn y() -> BivariatePoly {
        BivariatePoly::monomial(0, 1, rat(1))
    }

    fn y_minus_x() -> BivariatePoly {
        y().sub(&x())
    }

    #[test]
    fn identity_determinant_is_one() {
        let m = PolyMatrix::new(vec![
            vec![BivariatePoly::one(), BivariatePoly::zero()],
            vec![BivariatePoly::zero(), BivariatePoly::one()],
        ])
        .unwrap();
        assert_eq!(m.determinant_cofactor(), BivariatePoly::one());
        assert_eq!(m.determinant_bareiss().unwrap(), BivariatePoly::one());
    }

    #[test]
    fn alternant_two_by_two() {
        let m = PolyMatrix::new(vec![
            vec![BivariatePoly::one(), x()],
            vec![BivariatePoly::one(), y()],
        ])
        .unwrap();
        assert_eq!(m.determinant_cofactor(), y_minus_x());
        assert_eq!(m.determinant_bareiss().unwrap(), y_minus_x());
    }

    #[test]
    fn zero_column_matrix_has_zero_determinant() {
        let m = PolyMatrix::new(vec![
            vec![BivariatePoly::zero(), x()],
            vec![BivariatePoly::zero(), y()],
        ])
        .unwrap();
        assert!(m.determinant_cofactor().is_zero());
        assert!(m.determinant_bareiss().unwrap().is_zero());
    }

    #[test]
    fn division_by_y_minus_x_power_roundtrips() {
        let p = x().mul(&x()).add(&y().scale(&rat(3))).add(&BivariatePoly::one());
        let shifted = p.mul(&y_minus_x().pow(4));
        let back = shifted.div_y_minus_x_pow(4).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn inexact_t_division_is_an_error() {
        let p = x().add(&y());
        let err = p.div_y_minus_x_pow(1).unwrap_err();
        assert!(matches!(err, Error::InexactDivision(_)));
    }

    #[test]
    fn divide_exact_detects_remainders() {
        let p = x().mul(&y()).add(&BivariatePoly::one());
        assert!(matches!(
            p.divide_exact(&x()),
            Err(Error::InexactDivision(_))
        ));
    }

    #[test]
    fn series_truncates_polynomial_products() {
        let p = x().add(&y()).pow(3);
        let s = BivariateSeries::from_poly(&x().add(&y()), 2, 2);
        let cubed = s.mul(&s).mul(&s);
        for i in 0..=2usize {
            for j in 0..=2usize {
                if i + j <= 2 {
                    assert_eq!(cubed.coeff(i, j), &p.coeff(i, j), "at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn series_division_recovers_factor() {
        let one_minus_x2 = BivariatePoly::one().sub(&x().mul(&x()));
        let d = BivariateSeries::from_poly(&one_minus_x2, 8, 8);
        let prod = d.mul(&d);
        let back = prod.divide(&d).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn series_division_strips_monomial_factors() {
        let xs = BivariateSeries::from_poly(&x(), 4, 4);
        let p = BivariateSeries::from_poly(&x().mul(&x().add(&y())), 4, 4);
        let q = p.divide(&xs).unwrap();
        assert_eq!(q, BivariateSeries::from_poly(&x().add(&y()), 4, 4));
        let one = BivariateSeries::one(4, 4);
        assert!(matches!(
            one.divide(&xs),
            Err(Error::InexactDivision(_))
        ));
    }

    #[test]
    fn series_division_rejects_non_monomial_lowest_form() {
        let d = BivariateSeries::from_poly(&x().add(&y()), 4, 4);
        let p = BivariateSeries::from_poly(&x().mul(&x()).sub(&y().mul(&y())), 4, 4);
        assert!(matches!(p.divide(&d), Err(Error::InexactDivision(_))));
    }

    fn arb_poly(max_deg: usize, max_coeff: i64) -> impl Strategy<Value = BivariatePoly> {
        prop::collection::vec(
            prop::collection::vec(-max_coeff..=max_coeff, max_deg + 1),
            max_deg + 1,
        )
        .prop_map(|grid| {
            BivariatePoly::from_grid(
                grid.into_iter()
                    .map(|row| row.into_iter().map(rat).collect())
                    .collect(),
            )
        })
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(prop::collection::vec(arb_poly(1, 3), n), n)
            .prop_map(|rows| PolyMatrix::new(rows).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn eval_respects_ring_operations(
            p in arb_poly(3, 9),
            q in arb_poly(3, 9),
            xn in -5i64..=5,
            yn in -5i64..=5,
        ) {
            let (xv, yv) = (rat(xn), rat(yn));
            let sum = p.add(&q).eval(&xv, &yv);
            prop_assert_eq!(sum, p.eval(&xv, &yv) + q.eval(&xv, &yv));
            let prod = p.mul(&q).eval(&xv, &yv);
            prop_assert_eq!(prod, p.eval(&xv, &yv) * q.eval(&xv, &yv));
        }

        #[test]
        fn exact_division_roundtrips(p in arb_poly(2, 6), q in arb_poly(2, 6)) {
            prop_assume!(!q.is_zero());
            let prod = p.mul(&q);
            prop_assert_eq!(prod.divide_exact(&q).unwrap(), p);
        }

        #[test]
        fn determinant_engines_agree(m in arb_matrix(3)) {
            prop_assert_eq!(m.determinant_cofactor(), m.determinant_bareiss().unwrap());
        }

        #[test]
        fn row_swap_flips_determinant_sign(m in arb_matrix(4), a in 0usize..4, b in 0usize..4) {
            prop_assume!(a != b);
            let det = m.determinant_cofactor();
            let mut swapped = m.clone();
            swapped.swap_rows(a, b);
            prop_assert_eq!(swapped.determinant_cofactor(), det.neg());
        }
    }
}
