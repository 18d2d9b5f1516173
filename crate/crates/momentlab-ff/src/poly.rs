//! Dense univariate polynomial arithmetic over a prime field F_q.
//!
//! The same type serves both ambient variables of the arithmetic side:
//! the T of the quadratic-residue sums and the S of the sector machinery
//! are names for the one generator of a univariate polynomial ring.

use momentlab_core::error::{Error, Result};

/// A polynomial over Z/q with no trailing zero coefficients; the empty
/// coefficient vector is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    pub q: u64,
    coeffs: Vec<u64>,
}

/// Deterministic trial-division primality test for the lab-scale moduli.
pub fn is_odd_prime(q: u64) -> bool {
    if q < 3 || q % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Validates the field modulus used by every public entry point.
pub fn require_odd_prime(q: u64) -> Result<()> {
    if is_odd_prime(q) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "the field modulus must be an odd prime, got {q}"
        )))
    }
}

impl FqPoly {
    pub fn new(q: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % q).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FqPoly { q, coeffs: c }
    }

    pub fn zero(q: u64) -> Self {
        FqPoly { q, coeffs: vec![] }
    }

    pub fn one(q: u64) -> Self {
        FqPoly {
            q,
            coeffs: vec![1],
        }
    }

    /// The monomial T (degree 1, unit leading coefficient).
    pub fn gen(q: u64) -> Self {
        FqPoly {
            q,
            coeffs: vec![0, 1],
        }
    }

    /// The monic polynomial of degree `n` whose lower coefficients are the
    /// base-q digits of `idx`; the bijection used by every enumeration of
    /// the monic stratum M_n.
    pub fn monic_from_index(q: u64, n: usize, idx: u64) -> Self {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut rest = idx;
        for _ in 0..n {
            coeffs.push(rest % q);
            rest /= q;
        }
        coeffs.push(1);
        FqPoly { q, coeffs }
    }

    /// Inverse of `monic_from_index` for a monic polynomial.
    pub fn monic_index(&self) -> u64 {
        let mut idx = 0u64;
        for &c in self.coeffs.iter().rev().skip(1) {
            idx = idx * self.q + c;
        }
        idx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// The value f(0).
    pub fn constant_term(&self) -> u64 {
        self.coeff(0)
    }

    pub fn add(&self, rhs: &FqPoly) -> FqPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + rhs.coeff(i)) % self.q)
            .collect();
        FqPoly::new(self.q, coeffs)
    }

    pub fn sub(&self, rhs: &FqPoly) -> FqPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.q + self.coeff(i) - rhs.coeff(i)) % self.q)
            .collect();
        FqPoly::new(self.q, coeffs)
    }

    pub fn mul(&self, rhs: &FqPoly) -> FqPoly {
        if self.is_zero() || rhs.is_zero() {
            return FqPoly::zero(self.q);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a * b) % self.q;
            }
        }
        FqPoly::new(self.q, coeffs)
    }

    /// Euclidean division by a nonzero divisor.
    pub fn divrem(&self, divisor: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        let q = self.q;
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = mod_inverse(q, *divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let pos = rem.len() - 1;
            let factor = rem[pos] * lead_inv % q;
            if factor != 0 {
                quot[pos - dd] = factor;
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    let slot = pos - dd + i;
                    rem[slot] = (rem[slot] + q - factor * dc % q) % q;
                }
            }
            rem.pop();
        }
        Ok((FqPoly::new(q, quot), FqPoly::new(q, rem)))
    }

    pub fn rem(&self, divisor: &FqPoly) -> Result<FqPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// self^exp mod modulus by binary exponentiation.
    pub fn pow_mod(&self, mut exp: u128, modulus: &FqPoly) -> Result<FqPoly> {
        let mut base = self.rem(modulus)?;
        let mut acc = FqPoly::one(self.q).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn gcd(&self, rhs: &FqPoly) -> Result<FqPoly> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Irreducibility over F_q: T^{q^d} = T mod f, and for every prime
    /// p | d the polynomial T^{q^{d/p}} - T is coprime to f.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(d) => d,
        };
        let t = FqPoly::gen(self.q);
        let frob = t.pow_mod((self.q as u128).pow(d as u32), self)?;
        if frob != t.rem(self)? {
            return Ok(false);
        }
        for p in prime_factors(d as u64) {
            let e = d as u64 / p;
            let partial = t.pow_mod((self.q as u128).pow(e as u32), self)?;
            let shifted = partial.sub(&t.rem(self)?);
            let g = shifted.gcd(self)?;
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Modular inverse in Z/q for prime q via Fermat exponentiation.
pub fn mod_inverse(q: u64, a: u64) -> u64 {
    mod_pow(q, a, q - 2)
}

pub fn mod_pow(q: u64, mut base: u64, mut exp: u64) -> u64 {
    base %= q;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All monic irreducible polynomials of exact degree `d`.
pub fn monic_irreducibles(q: u64, d: usize) -> Result<Vec<FqPoly>> {
    require_odd_prime(q)?;
    let mut out = vec![];
    for idx in 0..q.pow(d as u32) {
        let f = FqPoly::monic_from_index(q, d, idx);
        if f.is_irreducible()? {
            out.push(f);
        }
    }
    Ok(out)
}
