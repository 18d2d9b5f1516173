//! self-check: cross-engine agreement on a built-in small grid, plus the
//! known discrepancies between printed formulas and direct enumeration,
//! recorded in the output without failing the run.

use std::collections::BTreeMap;

use momentlab_core::closed::{boundary_scan, gamma_piece, i_sym_k1, GammaPiece};
use momentlab_core::detgen::gen_series;
use momentlab_core::gamma::gamma_lattice_fit;
use momentlab_core::lattice::{lattice_count, PolytopeModel};
use momentlab_core::ssyt::{i_moment, j_moment};
use momentlab_core::{Ensemble, Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;

use crate::output::{Report, Row};

fn check_row(engine: &str) -> Row {
    Row {
        engine: engine.to_string(),
        value: "1".to_string(),
        ..Row::default()
    }
}

fn fail(check: &str, detail: String) -> Error {
    Error::Consistency(format!("self-check {check}: {detail}"))
}

/// ssyt, series, and the two-branch closed form on the k = 1 symplectic
/// family.
fn k1_two_branch() -> Result<Row> {
    for cap in 1..=3usize {
        let top = 2 * cap;
        let series = gen_series(Ensemble::Symplectic, 1, cap, top, top)?;
        for n in 0..=top {
            let ssyt = i_moment(Ensemble::Symplectic, 1, n, cap).value;
            let closed = i_sym_k1(n, cap);
            let coeff = series.coeff(n, n);
            if ssyt != closed || !coeff.is_integer() || coeff.to_integer() != BigInt::from(ssyt.clone()) {
                return Err(fail(
                    "k1-two-branch",
                    format!("(n, N) = ({n}, {cap}): ssyt {ssyt}, closed {closed}, series {coeff}"),
                ));
            }
        }
    }
    Ok(check_row("k1-two-branch"))
}

/// Determinant series against tableau counts on full small grids.
fn series_grid() -> Result<Row> {
    for ensemble in [Ensemble::Symplectic, Ensemble::Orthogonal] {
        for k in 1..=2usize {
            for cap in 1..=2usize {
                let top = ensemble.max_weight(k, cap);
                let series = gen_series(ensemble, k, cap, top, top)?;
                for m in 0..=top {
                    for n in 0..=top {
                        let direct = j_moment(ensemble, k, m as u64, n as u64, cap);
                        let coeff = series.coeff(m, n);
                        if !coeff.is_integer() || coeff.to_integer() != BigInt::from(direct.clone())
                        {
                            return Err(fail(
                                "series-grid",
                                format!(
                                    "{} k = {k}, N = {cap}, (m, n) = ({m}, {n}): ssyt {direct}, series {coeff}",
                                    ensemble.name()
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(check_row("series-grid"))
}

/// I(n) = I(top - n) by enumerating both sides independently.
fn functional_equation() -> Result<Row> {
    for ensemble in [Ensemble::Symplectic, Ensemble::Orthogonal] {
        for k in 1..=2usize {
            for cap in 1..=3usize {
                let top = ensemble.max_weight(k, cap);
                for n in 0..=top / 2 {
                    let low = i_moment(ensemble, k, n, cap).value;
                    let high = i_moment(ensemble, k, top - n, cap).value;
                    if low != high {
                        return Err(fail(
                            "functional-equation",
                            format!(
                                "{} k = {k}, N = {cap}: I({n}) = {low} but I({}) = {high}",
                                ensemble.name(),
                                top - n
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(check_row("functional-equation"))
}

/// Lattice counts against tableau counts at matching (n, N).
fn lattice_count_check() -> Result<Row> {
    let cases: [(Ensemble, usize, u64, u64, u64); 3] = [
        (Ensemble::Symplectic, 1, 1, 2, 8),
        (Ensemble::Symplectic, 2, 1, 2, 6),
        (Ensemble::Orthogonal, 2, 1, 3, 9),
    ];
    for (ensemble, k, c_num, c_den, max_dilate) in cases {
        let model = PolytopeModel::new(ensemble, k, c_num, c_den)?;
        let step = match ensemble {
            Ensemble::Symplectic => c_den.max(2),
            Ensemble::Orthogonal => c_den,
        };
        let mut dilate = step;
        while dilate <= max_dilate {
            let n = (c_num * dilate / c_den) as usize;
            let (cap, count) = match ensemble {
                Ensemble::Symplectic => (dilate / 2, lattice_count(&model, dilate)?),
                Ensemble::Orthogonal => {
                    ((dilate - 1) / 2, lattice_count(&model, dilate)? * 2u32)
                }
            };
            let direct = i_moment(ensemble, k, n, cap as usize).value;
            if count != direct {
                return Err(fail(
                    "lattice-count",
                    format!(
                        "{} k = {k}, dilate {dilate}: lattice {count}, ssyt {direct}",
                        ensemble.name()
                    ),
                ));
            }
            dilate += 2 * step;
        }
    }
    Ok(check_row("lattice-count"))
}

/// k = 1 gamma fits against the printed pieces.
fn gamma_k1() -> Result<Row> {
    for (c_num, c_den, expected) in [(1u64, 2u64, "1/4"), (1, 4, "1/8")] {
        let fit = gamma_lattice_fit(Ensemble::Symplectic, 1, c_num, c_den)?;
        let c = BigRational::new(BigInt::from(c_num), BigInt::from(c_den));
        let piece = match gamma_piece(Ensemble::Symplectic, 1, &c)? {
            GammaPiece::Value(v) => v,
            GammaPiece::UnknownPiece => {
                return Err(fail(
                    "gamma-k1",
                    format!("no printed piece at c = {c_num}/{c_den}"),
                ))
            }
        };
        if fit.gamma.to_string() != expected || piece != fit.gamma {
            return Err(fail(
                "gamma-k1",
                format!(
                    "c = {c_num}/{c_den}: fit {}, piece {piece}, expected {expected}",
                    fit.gamma
                ),
            ));
        }
    }
    Ok(check_row("gamma-k1"))
}

/// A short fixed-seed Haar run against the exact moment.
fn rmt_spot() -> Result<Row> {
    let exact = i_moment(Ensemble::Symplectic, 1, 1, 2)
        .value
        .to_string()
        .parse::<f64>()
        .expect("small moment fits in f64");
    let est = momentlab_rmt::estimate_i(Ensemble::Symplectic, 1, 1, 2, 2_000, 1)?;
    if est.stderr <= 0.0 || (est.estimate - exact).abs() > 6.0 * est.stderr {
        return Err(fail(
            "rmt-spot",
            format!(
                "estimate {} +- {} is not within 6 stderr of {exact}",
                est.estimate, est.stderr
            ),
        ));
    }
    Ok(check_row("rmt-spot"))
}

/// Sector variance identity and the chi_2-weighted divisor sums at the
/// smallest admissible parameters.
fn ff_spot() -> Result<Row> {
    let (variance, rhs) = momentlab_ff::sector_variance(3, 2, 1, 1)?;
    if (variance - rhs).abs() > 1e-8 {
        return Err(fail(
            "ff-spot",
            format!("sector variance {variance:e} vs character sum {rhs:e}"),
        ));
    }
    for (n, expected) in [(0usize, 1i64), (1, 0), (2, 0)] {
        let sum = momentlab_ff::chi2_sum_vanishes(3, 1, n)?;
        if sum != expected {
            return Err(fail(
                "ff-spot",
                format!("chi_2-weighted divisor sum at n = {n} is {sum}, expected {expected}"),
            ));
        }
    }
    Ok(check_row("ff-spot"))
}

/// The two known discrepancies, recorded as notes and rows but never
/// treated as failures.
fn known_discrepancies(report: &mut Report) -> Result<()> {
    let enumerated = i_moment(Ensemble::Orthogonal, 1, 1, 2).value;
    if enumerated.to_string() != "2" {
        return Err(fail(
            "known-discrepancy",
            format!("k = 1 orthogonal enumeration moved: {enumerated}"),
        ));
    }
    report.notes.push(
        "known-discrepancy: the printed k = 1 orthogonal moment claims I(n; N) = 0, \
         but direct tableau enumeration gives 2 at every admissible n (the two \
         fixed single-column shapes carry mass 2; shown at n = 1, N = 2)"
            .to_string(),
    );
    report.rows.push(Row {
        ensemble: "orth".to_string(),
        k: "1".to_string(),
        m: "1".to_string(),
        n: "1".to_string(),
        cap: "2".to_string(),
        engine: "known-discrepancy".to_string(),
        value: enumerated.to_string(),
        ..Row::default()
    });

    let sym_boundary = boundary_scan(Ensemble::Symplectic, 2, 4);
    let orth_boundary = boundary_scan(Ensemble::Orthogonal, 2, 4);
    if sym_boundary != Some(5) || orth_boundary != Some(10) {
        return Err(fail(
            "known-discrepancy",
            format!("validity boundaries moved: sym {sym_boundary:?}, orth {orth_boundary:?}"),
        ));
    }
    report.notes.push(
        "known-discrepancy: the unguarded closed forms depart from enumeration \
         beyond n = N (first mismatch at n = N + 1 = 5 for symplectic k = 2, \
         N = 4, and at n = 2N + 2 = 10 for orthogonal k = 2, N = 4), so \
         validity requires n <= N rather than the nominal n < 2N"
            .to_string(),
    );
    for (name, k, boundary) in [("sym", 2usize, 5usize), ("orth", 2, 10)] {
        report.rows.push(Row {
            ensemble: name.to_string(),
            k: k.to_string(),
            n: boundary.to_string(),
            cap: "4".to_string(),
            engine: "validity-boundary".to_string(),
            value: boundary.to_string(),
            ..Row::default()
        });
    }
    Ok(())
}

pub fn self_check(config: BTreeMap<String, String>) -> Result<Report> {
    let mut report = Report {
        config,
        ..Report::default()
    };
    let checks: [fn() -> Result<Row>; 7] = [
        k1_two_branch,
        series_grid,
        functional_equation,
        lattice_count_check,
        gamma_k1,
        rmt_spot,
        ff_spot,
    ];
    for check in checks {
        report.rows.push(check()?);
    }
    known_discrepancies(&mut report)?;
    report.notes.insert(
        0,
        format!(
            "self-check: {} cross-engine checks passed; 2 known discrepancies recorded (not failures)",
            checks.len()
        ),
    );
    Ok(report)
}
