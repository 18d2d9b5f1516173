//! The sector group S^1_k: units f mod S^k with constant term 1 and
//! Norm(f) = f sigma(f) = 1, where sigma negates the variable. The unit
//! group splits as the direct product H_k x S^1_k with H_k the
//! sigma-fixed units, and the projection onto the sector factor is
//! U_k(f) = sqrt(f / sigma(f)).

use std::collections::HashMap;

use momentlab_core::error::{Error, Result};

use crate::poly::{mod_inverse, require_odd_prime, FqPoly};

/// Truncated product of two series mod S^k.
pub fn trunc_mul(q: u64, a: &[u64], b: &[u64], k: usize) -> Vec<u64> {
    let mut out = vec![0u64; k];
    for (i, &x) in a.iter().enumerate().take(k) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(k - i) {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    out
}

/// Truncated inverse of a unit series mod S^k.
pub fn trunc_inv(q: u64, a: &[u64], k: usize) -> Result<Vec<u64>> {
    if a.first().copied().unwrap_or(0) % q == 0 {
        return Err(Error::Domain(
            "only a unit (nonzero constant term) has an inverse mod S^k".into(),
        ));
    }
    let mut out = vec![0u64; k];
    out[0] = mod_inverse(q, a[0] % q);
    for j in 1..k {
        let mut acc = 0u64;
        for i in 1..=j {
            let ai = a.get(i).copied().unwrap_or(0) % q;
            acc = (acc + ai * out[j - i]) % q;
        }
        out[j] = (q - acc % q) % q * out[0] % q;
    }
    Ok(out)
}

/// sigma(f): the involution S -> -S, negating odd coefficients.
pub fn sigma(q: u64, a: &[u64]) -> Vec<u64> {
    a.iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 1 { (q - c % q) % q } else { c % q })
        .collect()
}

/// Square root of a series with constant term 1, mod S^k; unique with
/// constant term 1 because 2 is invertible for odd q.
pub fn sqrt_series(q: u64, g: &[u64], k: usize) -> Result<Vec<u64>> {
    if g.first().copied().unwrap_or(0) % q != 1 {
        return Err(Error::Domain(
            "the square root normalization needs constant term 1".into(),
        ));
    }
    let inv2 = mod_inverse(q, 2);
    let mut u = vec![0u64; k];
    u[0] = 1;
    for j in 1..k {
        let mut cross = 0u64;
        for i in 1..j {
            cross = (cross + u[i] * u[j - i]) % q;
        }
        let gj = g.get(j).copied().unwrap_or(0) % q;
        u[j] = (gj + q - cross) % q * inv2 % q;
    }
    let check = trunc_mul(q, &u, &u, k);
    for j in 0..k {
        if check[j] != g.get(j).copied().unwrap_or(0) % q {
            return Err(Error::Consistency(
                "square root recurrence failed its defining identity".into(),
            ));
        }
    }
    Ok(u)
}

/// U_k of a unit residue: sqrt(w / sigma(w)) mod S^k.
pub fn u_from_unit(q: u64, k: usize, w: &[u64]) -> Result<Vec<u64>> {
    let sig = sigma(q, w);
    let ratio = trunc_mul(q, w, &trunc_inv(q, &sig, k)?, k);
    sqrt_series(q, &ratio, k)
}

/// The sector group with its multiplication table, the identity at
/// index 0, and the cardinality data of the direct-product decomposition.
#[derive(Debug, Clone)]
pub struct SectorGroup {
    pub q: u64,
    pub k: usize,
    pub kappa: u32,
    /// Length-k coefficient vectors; `elements[0]` is the identity.
    pub elements: Vec<Vec<u64>>,
    index: HashMap<Vec<u64>, usize>,
    /// `mult[i][j]` is the index of the product of elements i and j.
    pub mult: Vec<Vec<usize>>,
    /// Order of the sigma-fixed complement H_k inside the unit group.
    pub h_order: u64,
}

impl SectorGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, coeffs: &[u64]) -> Result<usize> {
        self.index.get(coeffs).copied().ok_or_else(|| {
            Error::Consistency("residue does not lie in the sector group".into())
        })
    }

    /// Sector projection of a polynomial with nonzero constant term.
    pub fn project(&self, f: &FqPoly) -> Result<usize> {
        if f.constant_term() == 0 {
            return Err(Error::Domain(
                "the sector projection needs f(0) != 0".into(),
            ));
        }
        let mut w = vec![0u64; self.k];
        for (i, slot) in w.iter_mut().enumerate() {
            *slot = f.coeff(i);
        }
        let u = u_from_unit(self.q, self.k, &w)?;
        self.index_of(&u)
    }

    /// Whether f and the group element v lie in the same H_k-coset of the
    /// unit group: f / v must be sigma-fixed mod S^k.
    pub fn same_h_coset(&self, f: &FqPoly, v_idx: usize) -> Result<bool> {
        if f.constant_term() == 0 {
            return Err(Error::Domain("coset membership needs f(0) != 0".into()));
        }
        let mut w = vec![0u64; self.k];
        for (i, slot) in w.iter_mut().enumerate() {
            *slot = f.coeff(i);
        }
        let ratio = trunc_mul(
            self.q,
            &w,
            &trunc_inv(self.q, &self.elements[v_idx], self.k)?,
            self.k,
        );
        Ok(ratio == sigma(self.q, &ratio))
    }
}

/// Builds S^1_k by filtering the candidate residues 1 + a_1 S + ... on
/// the norm condition, then verifies the direct-product decomposition of
/// the unit group: the kernel of U_k over all units is H_k with the
/// stated order, the image is all of S^1_k, and |H_k| |S^1_k| equals the
/// unit-group order.
pub fn sector_group(q: u64, k: usize) -> Result<SectorGroup> {
    require_odd_prime(q)?;
    if k < 2 {
        return Err(Error::Domain(
            "the sector modulus exponent k must be at least 2".into(),
        ));
    }
    let kappa = (k / 2) as u32;
    let mut elements: Vec<Vec<u64>> = vec![];
    for raw in 0..q.pow(k as u32 - 1) {
        let mut w = vec![1u64; 1];
        let mut rest = raw;
        for _ in 1..k {
            w.push(rest % q);
            rest /= q;
        }
        let norm = trunc_mul(q, &w, &sigma(q, &w), k);
        let is_unit_norm = norm[0] == 1 && norm[1..].iter().all(|&c| c == 0);
        if is_unit_norm {
            elements.push(w);
        }
    }
    let expected = q.pow(kappa) as usize;
    if elements.len() != expected {
        return Err(Error::Consistency(format!(
            "sector group order {} differs from q^kappa = {expected}",
            elements.len()
        )));
    }
    let identity: Vec<u64> = std::iter::once(1)
        .chain(std::iter::repeat(0))
        .take(k)
        .collect();
    elements.sort();
    let id_pos = elements.iter().position(|w| *w == identity).ok_or_else(|| {
        Error::Consistency("sector group is missing the identity residue".into())
    })?;
    elements.swap(0, id_pos);
    let index: HashMap<Vec<u64>, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let mut mult = vec![vec![0usize; elements.len()]; elements.len()];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let prod = trunc_mul(q, a, b, k);
            mult[i][j] = *index.get(&prod).ok_or_else(|| {
                Error::Consistency("sector group is not closed under multiplication".into())
            })?;
        }
    }

    let expected_h = (q - 1) * q.pow(((k - 1) / 2) as u32);
    let unit_count = (q - 1) * q.pow(k as u32 - 1);
    let mut kernel = 0u64;
    let mut image = vec![false; elements.len()];
    let mut seen_units = 0u64;
    for c0 in 1..q {
        for raw in 0..q.pow(k as u32 - 1) {
            let mut w = vec![c0];
            let mut rest = raw;
            for _ in 1..k {
                w.push(rest % q);
                rest /= q;
            }
            let u = u_from_unit(q, k, &w)?;
            let idx = *index.get(&u).ok_or_else(|| {
                Error::Consistency("a unit projected outside the sector group".into())
            })?;
            image[idx] = true;
            if idx == 0 {
                kernel += 1;
                if w != sigma(q, &w) {
                    return Err(Error::Consistency(
                        "kernel of the sector projection contains a non-sigma-fixed unit".into(),
                    ));
                }
            }
            seen_units += 1;
        }
    }
    if seen_units != unit_count || kernel != expected_h || !image.iter().all(|&b| b) {
        return Err(Error::Consistency(format!(
            "direct product decomposition failed: kernel {kernel} (expected {expected_h}), \
             image covers {} of {} sectors",
            image.iter().filter(|&&b| b).count(),
            elements.len()
        )));
    }
    if expected_h * elements.len() as u64 != unit_count {
        return Err(Error::Consistency(
            "H_k and S^1_k orders do not multiply to the unit group order".into(),
        ));
    }

    Ok(SectorGroup {
        q,
        k,
        kappa,
        elements,
        index,
        mult,
        h_order: expected_h,
    })
}
