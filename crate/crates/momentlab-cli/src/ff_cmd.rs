//! The function-field subcommands: exact identity suite, variance
//! enumerations, and the q-sweep comparison against the matrix model.

use std::collections::BTreeMap;

use momentlab_core::{Error, Result};
use momentlab_ff::{
    chi2_sum_vanishes, l_polynomial, m0_sum, qr_deviation_squares, rmt_compare, sector_group,
    sector_variance, super_even_characters, CompareSide, SectorGroup, SuperEvenCharacter,
};
use num::bigint::BigInt;
use num::rational::Ratio;
use num::{ToPrimitive, Zero};

use crate::output::{decimal, Report, Row};

pub struct FfIdentitiesSpec {
    pub q: u64,
    pub k: usize,
    pub ell: usize,
    pub n_max: usize,
}

pub struct FfSectorsSpec {
    pub q: u64,
    pub k: usize,
    pub ell: usize,
    pub n_list: Vec<usize>,
}

pub struct FfQrSpec {
    pub q: u64,
    pub g: usize,
    pub k: usize,
    pub n_list: Vec<usize>,
}

pub struct QsweepSpec {
    pub qs: Vec<u64>,
    pub side: CompareSide,
    pub side_name: &'static str,
    pub k: usize,
    pub aux: usize,
    pub n: usize,
}

fn ff_row(q: u64, k: usize, m: usize, n: Option<usize>, engine: &str, value: String) -> Row {
    Row {
        ensemble: "ff".to_string(),
        k: k.to_string(),
        m: m.to_string(),
        n: n.map(|v| v.to_string()).unwrap_or_default(),
        cap: q.to_string(),
        engine: engine.to_string(),
        value,
        ..Row::default()
    }
}

const IDENTITY_TOL: f64 = 1e-8;

fn orthogonality_defect(group: &SectorGroup, characters: &[SuperEvenCharacter]) -> f64 {
    let order = group.order();
    let mut worst: f64 = 0.0;
    for (i, xi) in characters.iter().enumerate() {
        for (j, eta) in characters.iter().enumerate() {
            let mut sum = num::complex::Complex64::new(0.0, 0.0);
            for g in 0..order {
                sum += xi.values[g] * eta.values[g].conj();
            }
            let expected = if i == j { order as f64 } else { 0.0 };
            worst = worst.max((sum - expected).norm());
        }
    }
    worst
}

/// Max defect of |M_0(n; d_ell Xi)| against the matching coefficient of
/// L(u, Xi)^ell, over all characters, both chi_2 twists, n <= n_max.
fn m0_l_defect(
    group: &SectorGroup,
    characters: &[SuperEvenCharacter],
    ell: usize,
    n_max: usize,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for xi in characters {
        for twist in [false, true] {
            let lpoly = l_polynomial(group, xi, twist)?;
            let mut power = vec![num::complex::Complex64::new(1.0, 0.0)];
            for _ in 0..ell {
                let mut next =
                    vec![num::complex::Complex64::new(0.0, 0.0); power.len() + lpoly.coeffs.len() - 1];
                for (i, a) in power.iter().enumerate() {
                    for (j, b) in lpoly.coeffs.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                power = next;
            }
            for n in 0..=n_max {
                let m0 = m0_sum(group, n, ell, xi, twist)?;
                let coeff = power.get(n).copied().unwrap_or_default();
                worst = worst.max((m0.norm() - coeff.norm()).abs());
            }
        }
    }
    Ok(worst)
}

pub fn ff_identities(spec: &FfIdentitiesSpec, config: BTreeMap<String, String>) -> Result<Report> {
    let group = sector_group(spec.q, spec.k)?;
    let characters = super_even_characters(&group)?;
    let order = group.order();
    let kappa = spec.k / 2;
    let mut report = Report {
        config,
        ..Report::default()
    };
    let row = |m, n, engine: &str, value: String| ff_row(spec.q, spec.k, m, n, engine, value);

    if order as u64 != spec.q.pow(kappa as u32) {
        return Err(Error::Consistency(format!(
            "sector group order {order} is not q^kappa = {}",
            spec.q.pow(kappa as u32)
        )));
    }
    report
        .rows
        .push(row(spec.ell, None, "group-order", order.to_string()));

    if characters.len() != order {
        return Err(Error::Consistency(format!(
            "found {} characters on a group of order {order}",
            characters.len()
        )));
    }
    report.rows.push(row(
        spec.ell,
        None,
        "character-count",
        characters.len().to_string(),
    ));

    let odd_nontrivial = characters
        .iter()
        .filter(|c| !c.trivial && c.swan % 2 == 1)
        .count();
    if odd_nontrivial != order - 1 {
        return Err(Error::Consistency(format!(
            "{odd_nontrivial} of {} nontrivial characters have odd Swan conductor",
            order - 1
        )));
    }
    report.rows.push(row(
        spec.ell,
        None,
        "swan-odd-nontrivial",
        odd_nontrivial.to_string(),
    ));

    let primitive = characters.iter().filter(|c| c.primitive).count();
    let expected_primitive = (spec.q.pow(kappa as u32) - spec.q.pow(kappa as u32 - 1)) as usize;
    if primitive != expected_primitive {
        return Err(Error::Consistency(format!(
            "{primitive} primitive characters, expected {expected_primitive}"
        )));
    }
    report.rows.push(row(
        spec.ell,
        None,
        "primitive-count",
        primitive.to_string(),
    ));

    let ortho = orthogonality_defect(&group, &characters);
    if ortho > IDENTITY_TOL {
        return Err(Error::Consistency(format!(
            "character orthogonality defect {ortho:e} exceeds {IDENTITY_TOL:e}"
        )));
    }
    report.rows.push(row(
        spec.ell,
        None,
        "orthogonality-defect",
        decimal(ortho),
    ));

    let m0l = m0_l_defect(&group, &characters, spec.ell, spec.n_max)?;
    if m0l > IDENTITY_TOL {
        return Err(Error::Consistency(format!(
            "M_0 vs L-power coefficient defect {m0l:e} exceeds {IDENTITY_TOL:e}"
        )));
    }
    report
        .rows
        .push(row(spec.ell, None, "m0-lfunc-defect", decimal(m0l)));

    for n in 0..=spec.n_max {
        let (variance, rhs) = sector_variance(spec.q, spec.k, spec.ell, n)?;
        let defect = (variance - rhs).abs();
        if defect > IDENTITY_TOL {
            return Err(Error::Consistency(format!(
                "variance identity defect {defect:e} at n = {n} exceeds {IDENTITY_TOL:e}"
            )));
        }
        report.rows.push(row(
            spec.ell,
            Some(n),
            "variance-identity-defect",
            decimal(defect),
        ));
    }

    for n in 0..=spec.n_max {
        let sum = chi2_sum_vanishes(spec.q, spec.ell, n)?;
        let expected = i64::from(n == 0);
        if sum != expected {
            return Err(Error::Consistency(format!(
                "chi_2-weighted divisor sum at n = {n} is {sum}, expected {expected}"
            )));
        }
        report
            .rows
            .push(row(spec.ell, Some(n), "smallsumd", sum.to_string()));
    }

    report.notes.push(format!(
        "ff-identities: q = {}, k = {}, ell = {}: group order {order}, \
         {odd_nontrivial} odd Swan conductors, {primitive} primitive characters, \
         all identities within {IDENTITY_TOL:e}",
        spec.q, spec.k, spec.ell,
    ));
    Ok(report)
}

pub fn ff_variance_sectors(
    spec: &FfSectorsSpec,
    config: BTreeMap<String, String>,
) -> Result<Report> {
    let mut report = Report {
        config,
        ..Report::default()
    };
    for &n in &spec.n_list {
        let (variance, rhs) = sector_variance(spec.q, spec.k, spec.ell, n)?;
        if (variance - rhs).abs() > IDENTITY_TOL {
            return Err(Error::Consistency(format!(
                "sector variance {variance:e} and its character sum {rhs:e} disagree at n = {n}"
            )));
        }
        report.rows.push(ff_row(
            spec.q,
            spec.k,
            spec.ell,
            Some(n),
            "sector-variance",
            decimal(variance),
        ));
        report.rows.push(ff_row(
            spec.q,
            spec.k,
            spec.ell,
            Some(n),
            "character-identity",
            decimal(rhs),
        ));
        report.notes.push(format!(
            "n = {n}: variance {variance:e}, character sum {rhs:e}, defect {:e}",
            (variance - rhs).abs()
        ));
    }
    Ok(report)
}

pub fn ff_variance_qr(spec: &FfQrSpec, config: BTreeMap<String, String>) -> Result<Report> {
    let mut report = Report {
        config,
        ..Report::default()
    };
    for &n in &spec.n_list {
        let squares = qr_deviation_squares(spec.q, spec.g, spec.k, n)?;
        let count = BigInt::from(squares.len());
        let total: Ratio<BigInt> = squares.iter().sum();
        let variance = total / Ratio::from_integer(count);
        report.rows.push(ff_row(
            spec.q,
            spec.k,
            spec.g,
            Some(n),
            "qr-variance",
            if variance.is_zero() {
                "0".to_string()
            } else {
                variance.to_string()
            },
        ));
        report.notes.push(format!(
            "n = {n}: variance {} = {:.6}",
            variance,
            variance.to_f64().expect("finite variance"),
        ));
    }
    Ok(report)
}

pub fn compare_qsweep(spec: &QsweepSpec, config: BTreeMap<String, String>) -> Result<Report> {
    let rows = rmt_compare(&spec.qs, spec.side, spec.n)?;
    let mut report = Report {
        config,
        ..Report::default()
    };
    for row in &rows {
        report.rows.push(ff_row(
            row.q,
            spec.k,
            spec.aux,
            Some(spec.n),
            &format!("{}-empirical", spec.side_name),
            decimal(row.empirical),
        ));
        report.rows.push(ff_row(
            row.q,
            spec.k,
            spec.aux,
            Some(spec.n),
            &format!("{}-predicted", spec.side_name),
            decimal(row.predicted),
        ));
        let mut note = format!(
            "{} q = {}: empirical {:.9}, predicted {:.9}, ratio {:.9}, |ratio - 1| = {:.9}",
            spec.side_name,
            row.q,
            row.empirical,
            row.predicted,
            row.ratio,
            (row.ratio - 1.0).abs(),
        );
        if let Some(idr) = row.identity_ratio {
            note.push_str(&format!(", character identity ratio {idr:.9}"));
        }
        report.notes.push(note);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_small_identity_suite_passes_and_reports_exact_counts() {
        let spec = FfIdentitiesSpec {
            q: 3,
            k: 2,
            ell: 1,
            n_max: 2,
        };
        let report = ff_identities(&spec, BTreeMap::new()).unwrap();
        let value_of = |engine: &str| -> String {
            report
                .rows
                .iter()
                .find(|r| r.engine == engine)
                .expect("row present")
                .value
                .clone()
        };
        assert_eq!(value_of("group-order"), "3");
        assert_eq!(value_of("swan-odd-nontrivial"), "2");
        assert_eq!(value_of("primitive-count"), "2");
        let smallsums: Vec<String> = report
            .rows
            .iter()
            .filter(|r| r.engine == "smallsumd")
            .map(|r| r.value.clone())
            .collect();
        assert_eq!(smallsums, vec!["1", "0", "0"]);
    }

    #[test]
    fn qr_rows_are_exact_rationals() {
        let spec = FfQrSpec {
            q: 3,
            g: 1,
            k: 1,
            n_list: vec![0, 1],
        };
        let report = ff_variance_qr(&spec, BTreeMap::new()).unwrap();
        assert_eq!(report.rows[0].value, "1/4");
        assert_eq!(report.rows[1].value, "3/4");
    }
}
