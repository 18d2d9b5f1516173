//! gamma-mc and rmt-mc: the Monte Carlo engines behind the front end.

use std::collections::BTreeMap;

use momentlab_core::gammamc::gamma_mc_integral;
use momentlab_core::{Ensemble, Result};
use momentlab_rmt::estimate_i;

use crate::output::{decimal, Report, Row};

pub struct GammaMcSpec {
    pub ensemble: Ensemble,
    pub ensemble_name: &'static str,
    pub k: usize,
    pub c_num: u64,
    pub c_den: u64,
    pub samples: u64,
    pub seed: u64,
}

pub struct RmtMcSpec {
    pub ensemble: Ensemble,
    pub ensemble_name: &'static str,
    pub k: usize,
    pub n_list: Vec<usize>,
    pub cap: usize,
    pub samples: u64,
    pub seed: u64,
}

pub fn gamma_mc(spec: &GammaMcSpec, config: BTreeMap<String, String>) -> Result<Report> {
    let c = spec.c_num as f64 / spec.c_den as f64;
    let est = gamma_mc_integral(spec.ensemble, spec.k, c, spec.samples, spec.seed)?;
    let mut report = Report {
        config,
        ..Report::default()
    };
    report.rows.push(Row {
        ensemble: spec.ensemble_name.to_string(),
        k: spec.k.to_string(),
        engine: "mc".to_string(),
        value: decimal(est.estimate),
        stderr: decimal(est.stderr),
        seed: spec.seed.to_string(),
        ..Row::default()
    });
    report.notes.push(format!(
        "gamma-mc: {} k = {}, c = {}/{}, accepted {} of {} samples",
        spec.ensemble_name, spec.k, spec.c_num, spec.c_den, est.accepted, est.samples,
    ));
    if est.degenerate {
        report.notes.push(format!(
            "gamma-mc: the acceptance region is too thin at this budget; \
             {} accepted samples give no usable error bar",
            est.accepted,
        ));
    }
    Ok(report)
}

pub fn rmt_mc(spec: &RmtMcSpec, config: BTreeMap<String, String>) -> Result<Report> {
    let mut report = Report {
        config,
        ..Report::default()
    };
    for &n in &spec.n_list {
        let est = estimate_i(spec.ensemble, spec.k, n, spec.cap, spec.samples, spec.seed)?;
        report.rows.push(Row {
            ensemble: spec.ensemble_name.to_string(),
            k: spec.k.to_string(),
            m: n.to_string(),
            n: n.to_string(),
            cap: spec.cap.to_string(),
            engine: "mc".to_string(),
            value: decimal(est.estimate),
            stderr: decimal(est.stderr),
            seed: spec.seed.to_string(),
        });
    }
    Ok(report)
}
