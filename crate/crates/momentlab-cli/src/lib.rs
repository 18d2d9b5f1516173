//! Command-line front end: computes moment tables, runs cross-engine
//! comparisons and q-sweeps, and emits CSV or JSON.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags, unparseable
//! rationals, divisibility violations, unsupported parameters), 2 on
//! internal consistency failures (engines that must agree did not).
//! Runs are deterministic: an identical resolved configuration,
//! including seed and jobs, produces byte-identical output.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::Parser;
use momentlab_core::{Error, Result};
use momentlab_ff::CompareSide;

pub mod args;
pub mod exact;
pub mod ff_cmd;
pub mod fit;
pub mod mc;
pub mod output;
pub mod selfcheck;

use args::{
    fill, fill_ensemble, fill_engine, fill_format, fill_side, load_config_file, parse_list,
    parse_rational, parse_span, require, Cli, Command, EngineArg, Format, SideArg,
};
use output::{emit, Report};

/// Parses argv, runs the selected subcommand, writes the report, and
/// maps errors to the documented exit codes.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return 0;
            }
            eprint!("{err}");
            return 1;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Consistency(_) => 2,
                _ => 1,
            }
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(path) => load_config_file(path)?,
        None => BTreeMap::new(),
    };

    let mut output = cli.output;
    if output.is_none() {
        if let Some(raw) = file.get("output") {
            output = Some(raw.into());
        }
    }
    let mut format = cli.format;
    fill_format(&mut format, &file)?;
    let format = format.unwrap_or_default();
    let mut jobs = cli.jobs;
    fill(&mut jobs, &file, "jobs")?;
    let jobs = jobs.unwrap_or(1);
    if jobs == 0 {
        return Err(Error::Parse("--jobs must be at least 1".into()));
    }
    let mut seed = cli.seed;
    fill(&mut seed, &file, "seed")?;
    let seed = seed.unwrap_or(0);

    let mut config = BTreeMap::new();
    config.insert("format".to_string(), format_name(format).to_string());
    config.insert("jobs".to_string(), jobs.to_string());
    config.insert("seed".to_string(), seed.to_string());
    if let Some(path) = &output {
        config.insert("output".to_string(), path.display().to_string());
    }
    let set =
        |config: &mut BTreeMap<String, String>, key: &str, value: String| {
            config.insert(key.to_string(), value);
        };

    let report: Report = match cli.command {
        Command::ComputeI(mut a) => {
            fill_ensemble(&mut a.ensemble, &file)?;
            fill(&mut a.k, &file, "k")?;
            if a.n.is_none() {
                a.n = file.get("n").cloned();
            }
            fill(&mut a.cap, &file, "N")?;
            fill_engine(&mut a.engine, &file)?;
            fill(&mut a.samples, &file, "samples")?;
            let ensemble = require(a.ensemble, "ensemble")?;
            let k = require(a.k, "k")?;
            let n_list = parse_span(&require(a.n, "n")?)?;
            let cap = require(a.cap, "N")?;
            let engine = a.engine.unwrap_or(EngineArg::Auto);
            let samples = a.samples.unwrap_or(10_000);
            set(&mut config, "subcommand", "compute-i".to_string());
            set(&mut config, "ensemble", ensemble.name().to_string());
            set(&mut config, "k", k.to_string());
            set(&mut config, "n", span_echo(&n_list));
            set(&mut config, "N", cap.to_string());
            set(&mut config, "engine", engine.name().to_string());
            if engine == EngineArg::Mc {
                set(&mut config, "samples", samples.to_string());
            }
            exact::compute_i(
                &exact::ComputeISpec {
                    ensemble: ensemble.to_core(),
                    ensemble_name: ensemble.name(),
                    k,
                    n_list,
                    cap,
                    engine,
                    samples,
                    seed,
                },
                config,
            )?
        }
        Command::Grid(mut a) => {
            fill_ensemble(&mut a.ensemble, &file)?;
            fill(&mut a.k, &file, "k")?;
            fill(&mut a.cap, &file, "N")?;
            fill_engine(&mut a.engine, &file)?;
            let ensemble = require(a.ensemble, "ensemble")?;
            let k = require(a.k, "k")?;
            let cap = require(a.cap, "N")?;
            let engine = a.engine.unwrap_or(EngineArg::Auto);
            set(&mut config, "subcommand", "grid".to_string());
            set(&mut config, "ensemble", ensemble.name().to_string());
            set(&mut config, "k", k.to_string());
            set(&mut config, "N", cap.to_string());
            set(&mut config, "engine", engine.name().to_string());
            exact::grid(
                &exact::GridSpec {
                    ensemble: ensemble.to_core(),
                    ensemble_name: ensemble.name(),
                    k,
                    cap,
                    engine,
                    jobs,
                },
                config,
            )?
        }
        Command::FitGamma(mut a) => {
            fill_ensemble(&mut a.ensemble, &file)?;
            fill(&mut a.k, &file, "k")?;
            if a.c.is_none() {
                a.c = file.get("c").cloned();
            }
            if a.dilates.is_none() {
                a.dilates = file.get("dilates").cloned();
            }
            let ensemble = require(a.ensemble, "ensemble")?;
            let k = require(a.k, "k")?;
            let (c_num, c_den) = parse_rational(&require(a.c, "c")?)?;
            let dilates = a.dilates.as_deref().map(parse_list).transpose()?;
            set(&mut config, "subcommand", "fit-gamma".to_string());
            set(&mut config, "ensemble", ensemble.name().to_string());
            set(&mut config, "k", k.to_string());
            set(&mut config, "c", format!("{c_num}/{c_den}"));
            if let Some(list) = &dilates {
                set(
                    &mut config,
                    "dilates",
                    list.iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                );
            }
            fit::fit_gamma(
                &fit::FitGammaSpec {
                    ensemble: ensemble.to_core(),
                    ensemble_name: ensemble.name(),
                    k,
                    c_num,
                    c_den,
                    dilates,
                },
                config,
            )?
        }
        Command::GammaMc(mut a) => {
            fill_ensemble(&mut a.ensemble, &file)?;
            fill(&mut a.k, &file, "k")?;
            if a.c.is_none() {
                a.c = file.get("c").cloned();
            }
            fill(&mut a.samples, &file, "samples")?;
            let ensemble = require(a.ensemble, "ensemble")?;
            let k = require(a.k, "k")?;
            let (c_num, c_den) = parse_rational(&require(a.c, "c")?)?;
            let samples = a.samples.unwrap_or(100_000);
            set(&mut config, "subcommand", "gamma-mc".to_string());
            set(&mut config, "ensemble", ensemble.name().to_string());
            set(&mut config, "k", k.to_string());
            set(&mut config, "c", format!("{c_num}/{c_den}"));
            set(&mut config, "samples", samples.to_string());
            mc::gamma_mc(
                &mc::GammaMcSpec {
                    ensemble: ensemble.to_core(),
                    ensemble_name: ensemble.name(),
                    k,
                    c_num,
                    c_den,
                    samples,
                    seed,
                },
                config,
            )?
        }
        Command::RmtMc(mut a) => {
            fill_ensemble(&mut a.ensemble, &file)?;
            fill(&mut a.k, &file, "k")?;
            if a.n.is_none() {
                a.n = file.get("n").cloned();
            }
            fill(&mut a.cap, &file, "N")?;
            fill(&mut a.samples, &file, "samples")?;
            let ensemble = require(a.ensemble, "ensemble")?;
            let k = require(a.k, "k")?;
            let n_list = parse_span(&require(a.n, "n")?)?;
            let cap = require(a.cap, "N")?;
            let samples = a.samples.unwrap_or(10_000);
            set(&mut config, "subcommand", "rmt-mc".to_string());
            set(&mut config, "ensemble", ensemble.name().to_string());
            set(&mut config, "k", k.to_string());
            set(&mut config, "n", span_echo(&n_list));
            set(&mut config, "N", cap.to_string());
            set(&mut config, "samples", samples.to_string());
            mc::rmt_mc(
                &mc::RmtMcSpec {
                    ensemble: ensemble.to_core(),
                    ensemble_name: ensemble.name(),
                    k,
                    n_list,
                    cap,
                    samples,
                    seed,
                },
                config,
            )?
        }
        Command::FfIdentities(mut a) => {
            fill(&mut a.q, &file, "q")?;
            fill(&mut a.k, &file, "k")?;
            fill(&mut a.ell, &file, "ell")?;
            fill(&mut a.n_max, &file, "n-max")?;
            let q = require(a.q, "q")?;
            let k = require(a.k, "k")?;
            let ell = require(a.ell, "ell")?;
            let n_max = a.n_max.unwrap_or(4);
            set(&mut config, "subcommand", "ff-identities".to_string());
            set(&mut config, "q", q.to_string());
            set(&mut config, "k", k.to_string());
            set(&mut config, "ell", ell.to_string());
            set(&mut config, "n-max", n_max.to_string());
            ff_cmd::ff_identities(&ff_cmd::FfIdentitiesSpec { q, k, ell, n_max }, config)?
        }
        Command::FfVarianceSectors(mut a) => {
            fill(&mut a.q, &file, "q")?;
            fill(&mut a.k, &file, "k")?;
            fill(&mut a.ell, &file, "ell")?;
            if a.n.is_none() {
                a.n = file.get("n").cloned();
            }
            let q = require(a.q, "q")?;
            let k = require(a.k, "k")?;
            let ell = require(a.ell, "ell")?;
            let n_list = parse_span(&require(a.n, "n")?)?;
            set(&mut config, "subcommand", "ff-variance-sectors".to_string());
            set(&mut config, "q", q.to_string());
            set(&mut config, "k", k.to_string());
            set(&mut config, "ell", ell.to_string());
            set(&mut config, "n", span_echo(&n_list));
            ff_cmd::ff_variance_sectors(&ff_cmd::FfSectorsSpec { q, k, ell, n_list }, config)?
        }
        Command::FfVarianceQr(mut a) => {
            fill(&mut a.q, &file, "q")?;
            fill(&mut a.g, &file, "g")?;
            fill(&mut a.k, &file, "k")?;
            if a.n.is_none() {
                a.n = file.get("n").cloned();
            }
            let q = require(a.q, "q")?;
            let g = require(a.g, "g")?;
            let k = require(a.k, "k")?;
            let n_list = parse_span(&require(a.n, "n")?)?;
            set(&mut config, "subcommand", "ff-variance-qr".to_string());
            set(&mut config, "q", q.to_string());
            set(&mut config, "g", g.to_string());
            set(&mut config, "k", k.to_string());
            set(&mut config, "n", span_echo(&n_list));
            ff_cmd::ff_variance_qr(&ff_cmd::FfQrSpec { q, g, k, n_list }, config)?
        }
        Command::CompareQsweep(mut a) => {
            fill_side(&mut a.side, &file)?;
            if a.qs.is_none() {
                a.qs = file.get("qs").cloned();
            }
            fill(&mut a.k, &file, "k")?;
            fill(&mut a.ell, &file, "ell")?;
            fill(&mut a.g, &file, "g")?;
            fill(&mut a.n, &file, "n")?;
            let side = require(a.side, "side")?;
            let qs = match a.qs {
                Some(raw) => parse_list(&raw)?,
                None => vec![5, 7, 11, 13],
            };
            let k = require(a.k, "k")?;
            let n = require(a.n, "n")?;
            set(&mut config, "subcommand", "compare-qsweep".to_string());
            set(
                &mut config,
                "qs",
                qs.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            );
            set(&mut config, "k", k.to_string());
            set(&mut config, "n", n.to_string());
            let (compare_side, side_name, aux) = match side {
                SideArg::Sectors => {
                    let ell = require(a.ell, "ell")?;
                    set(&mut config, "side", "sectors".to_string());
                    set(&mut config, "ell", ell.to_string());
                    (CompareSide::Sectors { k, ell }, "sectors", ell)
                }
                SideArg::Qr => {
                    let g = require(a.g, "g")?;
                    set(&mut config, "side", "qr".to_string());
                    set(&mut config, "g", g.to_string());
                    (CompareSide::QuadraticResidues { g, k }, "qr", g)
                }
            };
            ff_cmd::compare_qsweep(
                &ff_cmd::QsweepSpec {
                    qs,
                    side: compare_side,
                    side_name,
                    k,
                    aux,
                    n,
                },
                config,
            )?
        }
        Command::SelfCheck(_) => {
            set(&mut config, "subcommand", "self-check".to_string());
            selfcheck::self_check(config)?
        }
    };

    emit(&report, output.as_ref(), format)
}

fn format_name(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn span_echo(list: &[usize]) -> String {
    match list {
        [only] => only.to_string(),
        [first, .., last] => format!("{first}..{last}"),
        [] => String::new(),
    }
}
