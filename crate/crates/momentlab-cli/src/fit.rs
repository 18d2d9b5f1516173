//! fit-gamma: exact quasi-polynomial fits of lattice counts and the
//! gamma extraction, cross-checked against the printed pieces.

use std::collections::BTreeMap;

use momentlab_core::closed::{gamma_piece, GammaPiece};
use momentlab_core::gamma::{
    expected_degree, fit_period, gamma_from_fit, gamma_lattice_fit,
};
use momentlab_core::lattice::{lattice_count, PolytopeModel};
use momentlab_core::quasi::fit_quasi_polynomial;
use momentlab_core::{Ensemble, Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;

use crate::output::{Report, Row};

pub struct FitGammaSpec {
    pub ensemble: Ensemble,
    pub ensemble_name: &'static str,
    pub k: usize,
    pub c_num: u64,
    pub c_den: u64,
    pub dilates: Option<Vec<u64>>,
}

fn gamma_row(spec: &FitGammaSpec, engine: &str, value: String) -> Row {
    Row {
        ensemble: spec.ensemble_name.to_string(),
        k: spec.k.to_string(),
        engine: engine.to_string(),
        value,
        ..Row::default()
    }
}

/// Builds fit samples from an explicit dilation list: the fit variable
/// is N = dilate/2 for symplectic models and M = dilate for orthogonal
/// ones, whose counts carry the mass-2 factor.
fn samples_from_dilates(
    spec: &FitGammaSpec,
    dilates: &[u64],
) -> Result<Vec<(u64, BigRational)>> {
    let model = PolytopeModel::new(spec.ensemble, spec.k, spec.c_num, spec.c_den)?;
    let mut out = Vec::with_capacity(dilates.len());
    for &dilate in dilates {
        let count = lattice_count(&model, dilate)?;
        let (v, value) = match spec.ensemble {
            Ensemble::Symplectic => (dilate / 2, BigRational::from_integer(BigInt::from(count))),
            Ensemble::Orthogonal => {
                (dilate, BigRational::from_integer(BigInt::from(count * 2u32)))
            }
        };
        out.push((v, value));
    }
    Ok(out)
}

pub fn fit_gamma(spec: &FitGammaSpec, config: BTreeMap<String, String>) -> Result<Report> {
    let (fit, gamma) = match &spec.dilates {
        None => {
            let result = gamma_lattice_fit(spec.ensemble, spec.k, spec.c_num, spec.c_den)?;
            (result.fit, result.gamma)
        }
        Some(dilates) => {
            if dilates.is_empty() {
                return Err(Error::Domain("the dilation list is empty".into()));
            }
            let samples = samples_from_dilates(spec, dilates)?;
            let degree = expected_degree(spec.ensemble, spec.k)?;
            let period = fit_period(spec.ensemble, spec.c_den);
            let fit = fit_quasi_polynomial(&samples, degree, period)?;
            let gamma = gamma_from_fit(spec.ensemble, spec.k, spec.c_num, spec.c_den, &fit)?;
            (fit, gamma)
        }
    };

    let mut report = Report {
        config,
        ..Report::default()
    };
    report
        .rows
        .push(gamma_row(spec, "lattice", gamma.to_string()));
    report.notes.push(format!(
        "fit: {} k = {}, c = {}/{}, degree {}, period {}, gamma = {gamma}",
        spec.ensemble_name,
        spec.k,
        spec.c_num,
        spec.c_den,
        fit.degree(),
        fit.period(),
    ));

    let c = BigRational::new(BigInt::from(spec.c_num), BigInt::from(spec.c_den));
    if let Ok(GammaPiece::Value(printed)) = gamma_piece(spec.ensemble, spec.k, &c) {
        if printed != gamma {
            return Err(Error::Consistency(format!(
                "printed gamma piece {printed} disagrees with the lattice fit {gamma}"
            )));
        }
        report
            .rows
            .push(gamma_row(spec, "piece", printed.to_string()));
        report
            .notes
            .push("printed piece agrees with the lattice fit".to_string());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_k1_fit_recovers_its_printed_piece_on_both_routes() {
        let spec = FitGammaSpec {
            ensemble: Ensemble::Symplectic,
            ensemble_name: "sym",
            k: 1,
            c_num: 1,
            c_den: 2,
            dilates: None,
        };
        let report = fit_gamma(&spec, BTreeMap::new()).unwrap();
        assert_eq!(report.rows[0].value, "1/4");
        assert_eq!(report.rows[1].engine, "piece");
        assert_eq!(report.rows[1].value, "1/4");
    }

    #[test]
    fn explicit_dilations_reproduce_the_automatic_fit() {
        let dilates: Vec<u64> = (1..=4).map(|j| 2 * j).collect();
        let spec = FitGammaSpec {
            ensemble: Ensemble::Symplectic,
            ensemble_name: "sym",
            k: 1,
            c_num: 1,
            c_den: 4,
            dilates: Some(dilates),
        };
        let err = fit_gamma(&spec, BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::Domain(_)), "odd dilations must be divisible: {err}");

        let spec = FitGammaSpec {
            dilates: Some((1..=8).map(|j| 4 * j).collect()),
            ..spec
        };
        let report = fit_gamma(&spec, BTreeMap::new()).unwrap();
        assert_eq!(report.rows[0].value, "1/8");
    }
}
