//! Super-even characters: the characters of S^1_k, equivalently the
//! characters of the unit group mod S^k that are trivial on H_k. The
//! group is a small abelian p-group, so a generating basis is extracted
//! greedily (maximal-order element, then a complement grown by closure)
//! and characters are assigned root-of-unity images on the basis.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_complex::Complex64;

use momentlab_core::error::{Error, Result};

use crate::sector::{u_from_unit, SectorGroup};

/// One character of S^1_k with its value table and Swan conductor.
#[derive(Debug, Clone)]
pub struct SuperEvenCharacter {
    /// Value on each group element, indexed like `SectorGroup::elements`.
    pub values: Vec<Complex64>,
    /// Maximal d < k on which the character is nontrivial on the
    /// subgroup 1 + (S^d); 0 for the trivial character by convention.
    pub swan: usize,
    /// Swan conductor equal to k - 1.
    pub primitive: bool,
    /// The trivial character.
    pub trivial: bool,
}

fn element_order(mult: &[Vec<usize>], g: usize) -> usize {
    let mut x = g;
    let mut n = 1;
    while x != 0 {
        x = mult[x][g];
        n += 1;
    }
    n
}

fn closure(mult: &[Vec<usize>], gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::new();
    set.insert(0);
    let mut frontier: Vec<usize> = vec![0];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = mult[x][g];
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Decomposes the abelian group into cyclic factors, returning the
/// generator indices and their orders. Greedy: a maximal-order element
/// generates the first factor; a complement is grown element by element
/// subject to trivial intersection with that factor, and the procedure
/// recurses on the complement.
fn abelian_basis(mult: &[Vec<usize>], elements: &[usize]) -> Result<Vec<(usize, usize)>> {
    if elements.len() == 1 {
        return Ok(vec![]);
    }
    let g1 = *elements
        .iter()
        .max_by_key(|&&g| element_order(mult, g))
        .unwrap();
    let m1 = element_order(mult, g1);
    let cyclic = closure(mult, &[g1]);
    let mut gens: Vec<usize> = vec![];
    let mut complement: BTreeSet<usize> = BTreeSet::new();
    complement.insert(0);
    for &x in elements {
        if complement.contains(&x) {
            continue;
        }
        let mut seed = gens.clone();
        seed.push(x);
        let grown = closure(mult, &seed);
        if grown.intersection(&cyclic).count() == 1 {
            gens.push(x);
            complement = grown;
        }
    }
    if complement.len() * m1 != elements.len() {
        return Err(Error::Consistency(format!(
            "basis extraction failed: cyclic factor {m1} times complement {} misses order {}",
            complement.len(),
            elements.len()
        )));
    }
    let complement_list: Vec<usize> = complement.into_iter().collect();
    let mut basis = vec![(g1, m1)];
    basis.extend(abelian_basis(mult, &complement_list)?);
    Ok(basis)
}

/// Exponent vectors of every element with respect to the basis; the
/// enumeration of all mixed-radix products must hit each element exactly
/// once, which re-verifies that the basis is genuinely a direct sum.
fn discrete_logs(
    mult: &[Vec<usize>],
    order: usize,
    basis: &[(usize, usize)],
) -> Result<Vec<Vec<usize>>> {
    let mut logs: Vec<Option<Vec<usize>>> = vec![None; order];
    let radix: Vec<usize> = basis.iter().map(|&(_, m)| m).collect();
    let total: usize = radix.iter().product();
    if total != order {
        return Err(Error::Consistency(
            "basis orders do not multiply to the group order".into(),
        ));
    }
    let mut exps = vec![0usize; basis.len()];
    for _ in 0..total {
        let mut x = 0usize;
        for (slot, &(g, _)) in basis.iter().enumerate() {
            for _ in 0..exps[slot] {
                x = mult[x][g];
            }
        }
        if logs[x].replace(exps.clone()).is_some() {
            return Err(Error::Consistency(
                "two exponent vectors landed on one element".into(),
            ));
        }
        let mut carry = 0usize;
        loop {
            if carry == basis.len() {
                break;
            }
            exps[carry] += 1;
            if exps[carry] < radix[carry] {
                break;
            }
            exps[carry] = 0;
            carry += 1;
        }
    }
    logs.into_iter()
        .map(|l| l.ok_or_else(|| Error::Consistency("an element has no exponent vector".into())))
        .collect()
}

/// All q^kappa characters of the sector group, with Swan conductors.
pub fn super_even_characters(group: &SectorGroup) -> Result<Vec<SuperEvenCharacter>> {
    let order = group.order();
    let all: Vec<usize> = (0..order).collect();
    let basis = abelian_basis(&group.mult, &all)?;
    let logs = discrete_logs(&group.mult, order, &basis)?;
    let radix: Vec<usize> = basis.iter().map(|&(_, m)| m).collect();

    let gamma_images = gamma_subgroup_images(group)?;

    let mut characters = Vec::with_capacity(order);
    let mut twist = vec![0usize; basis.len()];
    for count in 0..order {
        let values: Vec<Complex64> = logs
            .iter()
            .map(|exp| {
                let phase: f64 = exp
                    .iter()
                    .zip(&twist)
                    .zip(&radix)
                    .map(|((&e, &t), &m)| TAU * (e * t) as f64 / m as f64)
                    .sum();
                Complex64::from_polar(1.0, phase)
            })
            .collect();
        let trivial = twist.iter().all(|&t| t == 0);
        let swan = if trivial {
            0
        } else {
            swan_conductor(&values, &gamma_images)?
        };
        characters.push(SuperEvenCharacter {
            values,
            swan,
            primitive: swan == group.k - 1,
            trivial,
        });
        if count + 1 < order {
            let mut carry = 0usize;
            loop {
                twist[carry] += 1;
                if twist[carry] < radix[carry] {
                    break;
                }
                twist[carry] = 0;
                carry += 1;
            }
        }
    }
    Ok(characters)
}

/// For every d in 1..k, the sector indices hit by U_k on the congruence
/// subgroup 1 + (S^d); `images[d]` lists them without repetition.
fn gamma_subgroup_images(group: &SectorGroup) -> Result<Vec<Vec<usize>>> {
    let (q, k) = (group.q, group.k);
    let mut images: Vec<Vec<usize>> = vec![vec![]; k];
    for (d, image) in images.iter_mut().enumerate().skip(1) {
        let mut seen = BTreeSet::new();
        for raw in 0..q.pow((k - d) as u32) {
            let mut w = vec![0u64; k];
            w[0] = 1;
            let mut rest = raw;
            for slot in w.iter_mut().skip(d) {
                *slot = rest % q;
                rest /= q;
            }
            let u = u_from_unit(q, k, &w)?;
            seen.insert(group.index_of(&u)?);
        }
        *image = seen.into_iter().collect();
    }
    Ok(images)
}

fn swan_conductor(values: &[Complex64], gamma_images: &[Vec<usize>]) -> Result<usize> {
    for d in (1..gamma_images.len()).rev() {
        let nontrivial = gamma_images[d]
            .iter()
            .any(|&v| (values[v] - Complex64::new(1.0, 0.0)).norm() > 1e-8);
        if nontrivial {
            return Ok(d);
        }
    }
    Err(Error::Consistency(
        "a nontrivial character is trivial on every congruence subgroup".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sector::sector_group;

    #[test]
    fn character_counts_match_the_group_order() {
        for (q, k) in [(3u64, 4usize), (5, 2), (5, 4), (3, 5)] {
            let group = sector_group(q, k).unwrap();
            let chars = super_even_characters(&group).unwrap();
            assert_eq!(chars.len(), group.order());
            assert_eq!(chars.iter().filter(|c| c.trivial).count(), 1);
        }
    }

    #[test]
    fn characters_are_multiplicative() {
        let group = sector_group(3, 4).unwrap();
        let chars = super_even_characters(&group).unwrap();
        for xi in &chars {
            for i in 0..group.order() {
                for j in 0..group.order() {
                    let lhs = xi.values[group.mult[i][j]];
                    let rhs = xi.values[i] * xi.values[j];
                    assert!((lhs - rhs).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn orthogonality_relations_hold() {
        let group = sector_group(5, 4).unwrap();
        let chars = super_even_characters(&group).unwrap();
        let order = group.order() as f64;
        for (a, xi) in chars.iter().enumerate() {
            for (b, eta) in chars.iter().enumerate() {
                let total: Complex64 = (0..group.order())
                    .map(|v| xi.values[v].conj() * eta.values[v])
                    .sum();
                let expected = if a == b { order } else { 0.0 };
                assert!(
                    (total - Complex64::new(expected, 0.0)).norm() < 1e-8,
                    "pair ({a}, {b}) sums to {total}"
                );
            }
        }
    }

    #[test]
    fn swan_conductors_are_odd_for_nontrivial_characters() {
        for (q, k) in [(3u64, 2usize), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3), (5, 4), (5, 5)] {
            let group = sector_group(q, k).unwrap();
            let chars = super_even_characters(&group).unwrap();
            for xi in &chars {
                if xi.trivial {
                    assert_eq!(xi.swan, 0);
                } else {
                    assert_eq!(xi.swan % 2, 1, "q = {q}, k = {k}, swan = {}", xi.swan);
                    assert!(xi.swan < k);
                }
            }
        }
    }

    #[test]
    fn primitive_character_counts_follow_the_conductor_stratification() {
        let q = 3u64;
        let group = sector_group(q, 4).unwrap();
        let chars = super_even_characters(&group).unwrap();
        let primitive = chars.iter().filter(|c| c.primitive).count() as u64;
        assert_eq!(primitive, q * q - q);
        let depth_one = chars
            .iter()
            .filter(|c| !c.trivial && c.swan == 1)
            .count() as u64;
        assert_eq!(depth_one, q - 1);
    }
}
