//! compute-i and grid: the exact moment engines behind one front end.

use std::collections::BTreeMap;

use momentlab_core::closed::{i_auto, i_orth_closed, i_sym_closed};
use momentlab_core::detgen::gen_series;
use momentlab_core::lattice::{lattice_count, PolytopeModel};
use momentlab_core::ssyt::{i_moment, j_moment};
use momentlab_core::{Ensemble, Error, Result};
use num::bigint::BigUint;
use num::Zero;

use crate::args::EngineArg;
use crate::output::{decimal, Report, Row};

pub struct ComputeISpec {
    pub ensemble: Ensemble,
    pub ensemble_name: &'static str,
    pub k: usize,
    pub n_list: Vec<usize>,
    pub cap: usize,
    pub engine: EngineArg,
    pub samples: u64,
    pub seed: u64,
}

pub struct GridSpec {
    pub ensemble: Ensemble,
    pub ensemble_name: &'static str,
    pub k: usize,
    pub cap: usize,
    pub engine: EngineArg,
    pub jobs: usize,
}

fn exact_row(
    spec_name: &str,
    k: usize,
    m: usize,
    n: usize,
    cap: usize,
    engine: &str,
    value: &BigUint,
) -> Row {
    Row {
        ensemble: spec_name.to_string(),
        k: k.to_string(),
        m: m.to_string(),
        n: n.to_string(),
        cap: cap.to_string(),
        engine: engine.to_string(),
        value: value.to_string(),
        stderr: String::new(),
        seed: String::new(),
    }
}

/// Lattice-count route to I(n; N): dilate the chain polytope to the
/// matrix size and pick c so the dilation hits weight n.
fn lattice_value(ensemble: Ensemble, k: usize, n: usize, cap: usize) -> Result<BigUint> {
    if cap == 0 {
        return Err(Error::Domain("the lattice engine needs N >= 1".into()));
    }
    if n > ensemble.max_weight(k, cap) {
        return Ok(BigUint::zero());
    }
    let dilate = match ensemble {
        Ensemble::Symplectic => 2 * cap as u64,
        Ensemble::Orthogonal => 2 * cap as u64 + 1,
    };
    let model = PolytopeModel::new(ensemble, k, n as u64, dilate)?;
    let count = lattice_count(&model, dilate)?;
    Ok(match ensemble {
        Ensemble::Symplectic => count,
        Ensemble::Orthogonal => count * 2u32,
    })
}

fn series_values(spec: &ComputeISpec) -> Result<BTreeMap<usize, BigUint>> {
    let top = spec.ensemble.max_weight(spec.k, spec.cap);
    let order = spec.n_list.iter().copied().filter(|&n| n <= top).max();
    let mut out = BTreeMap::new();
    let series = match order {
        Some(d) => Some(gen_series(spec.ensemble, spec.k, spec.cap, d, d)?),
        None => None,
    };
    for &n in &spec.n_list {
        let value = if n > top {
            BigUint::zero()
        } else {
            let coeff = series
                .as_ref()
                .expect("series built whenever an in-range n exists")
                .coeff(n, n);
            if !coeff.is_integer() {
                return Err(Error::Consistency(format!(
                    "series coefficient ({n}, {n}) is not an integer: {coeff}"
                )));
            }
            coeff
                .to_integer()
                .to_biguint()
                .ok_or_else(|| Error::Consistency(format!("negative moment at n = {n}")))?
        };
        out.insert(n, value);
    }
    Ok(out)
}

pub fn compute_i(spec: &ComputeISpec, config: BTreeMap<String, String>) -> Result<Report> {
    if spec.k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let mut report = Report {
        config,
        ..Report::default()
    };
    let series_cache = if spec.engine == EngineArg::Series {
        Some(series_values(spec)?)
    } else {
        None
    };
    for &n in &spec.n_list {
        let row = match spec.engine {
            EngineArg::Auto => {
                let (value, resolved) = i_auto(spec.ensemble, spec.k, n, spec.cap);
                exact_row(
                    spec.ensemble_name,
                    spec.k,
                    n,
                    n,
                    spec.cap,
                    resolved.name(),
                    &value,
                )
            }
            EngineArg::Ssyt => {
                let value = i_moment(spec.ensemble, spec.k, n, spec.cap).value;
                exact_row(spec.ensemble_name, spec.k, n, n, spec.cap, "ssyt", &value)
            }
            EngineArg::Closed => {
                let value = match spec.ensemble {
                    Ensemble::Symplectic => i_sym_closed(spec.k, n, spec.cap)?,
                    Ensemble::Orthogonal => i_orth_closed(spec.k, n, spec.cap)?,
                };
                exact_row(spec.ensemble_name, spec.k, n, n, spec.cap, "closed", &value)
            }
            EngineArg::Series => {
                let value = series_cache
                    .as_ref()
                    .expect("cache filled for the series engine")
                    .get(&n)
                    .expect("cache covers every requested n");
                exact_row(spec.ensemble_name, spec.k, n, n, spec.cap, "series", value)
            }
            EngineArg::Lattice => {
                let value = lattice_value(spec.ensemble, spec.k, n, spec.cap)?;
                exact_row(spec.ensemble_name, spec.k, n, n, spec.cap, "lattice", &value)
            }
            EngineArg::Mc => {
                let est = momentlab_rmt::estimate_i(
                    spec.ensemble,
                    spec.k,
                    n,
                    spec.cap,
                    spec.samples,
                    spec.seed,
                )?;
                Row {
                    ensemble: spec.ensemble_name.to_string(),
                    k: spec.k.to_string(),
                    m: n.to_string(),
                    n: n.to_string(),
                    cap: spec.cap.to_string(),
                    engine: "mc".to_string(),
                    value: decimal(est.estimate),
                    stderr: decimal(est.stderr),
                    seed: spec.seed.to_string(),
                }
            }
        };
        report.rows.push(row);
    }
    Ok(report)
}

/// The full (m, n) table, parallelized over rows of m when jobs > 1 and
/// merged back in sorted order.
pub fn grid(spec: &GridSpec, config: BTreeMap<String, String>) -> Result<Report> {
    if spec.k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let engine = match spec.engine {
        EngineArg::Auto | EngineArg::Ssyt => EngineArg::Ssyt,
        EngineArg::Series => EngineArg::Series,
        other => {
            return Err(Error::Domain(format!(
                "grid supports the ssyt and series engines, not {}",
                other.name()
            )))
        }
    };
    let top = spec.ensemble.max_weight(spec.k, spec.cap);
    let mut report = Report {
        config,
        ..Report::default()
    };
    match engine {
        EngineArg::Series => {
            let series = gen_series(spec.ensemble, spec.k, spec.cap, top, top)?;
            for m in 0..=top {
                for n in 0..=top {
                    let coeff = series.coeff(m, n);
                    if !coeff.is_integer() {
                        return Err(Error::Consistency(format!(
                            "series coefficient ({m}, {n}) is not an integer: {coeff}"
                        )));
                    }
                    let value = coeff.to_integer().to_biguint().ok_or_else(|| {
                        Error::Consistency(format!("negative entry at ({m}, {n})"))
                    })?;
                    report.rows.push(exact_row(
                        spec.ensemble_name,
                        spec.k,
                        m,
                        n,
                        spec.cap,
                        "series",
                        &value,
                    ));
                }
            }
        }
        _ => {
            let jobs = spec.jobs.max(1).min(top + 1);
            let mut banded: Vec<Vec<Row>> = Vec::new();
            std::thread::scope(|scope| {
                let mut handles = Vec::new();
                for band in 0..jobs {
                    handles.push(scope.spawn(move || {
                        let mut rows = Vec::new();
                        for m in (0..=top).skip(band).step_by(jobs) {
                            for n in 0..=top {
                                let value =
                                    j_moment(spec.ensemble, spec.k, m as u64, n as u64, spec.cap);
                                rows.push(exact_row(
                                    spec.ensemble_name,
                                    spec.k,
                                    m,
                                    n,
                                    spec.cap,
                                    "ssyt",
                                    &value,
                                ));
                            }
                        }
                        rows
                    }));
                }
                for handle in handles {
                    banded.push(handle.join().expect("grid worker panicked"));
                }
            });
            let mut rows: Vec<Row> = banded.into_iter().flatten().collect();
            rows.sort_by_key(|r| {
                (
                    r.m.parse::<usize>().expect("m written as an integer"),
                    r.n.parse::<usize>().expect("n written as an integer"),
                )
            });
            report.rows = rows;
        }
    }
    Ok(report)
}
