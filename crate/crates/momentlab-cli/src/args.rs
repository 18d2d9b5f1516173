//! Flag parsing, config-file merging, and the resolved run description.
//!
//! Every subcommand flag is optional at the clap layer so that a
//! `--config` file can supply missing values; explicitly passed flags
//! always win. Requiredness is enforced after the merge.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use momentlab_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "momentlab",
    version,
    about = "Exact and Monte Carlo engines for matrix-moment tables",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Optional key=value config file; explicit flags override its entries.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Write rows to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Output format for the result rows.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for grid evaluation; 1 keeps runs fully sequential.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// 64-bit seed for the Monte Carlo engines.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate I(n; N) for one n or an inclusive n-range.
    ComputeI(ComputeIArgs),
    /// Emit the full J(m, n; N) table.
    Grid(GridArgs),
    /// Fit the lattice-count quasi-polynomial and extract gamma exactly.
    FitGamma(FitGammaArgs),
    /// Estimate gamma(c) by Monte Carlo rejection sampling.
    GammaMc(GammaMcArgs),
    /// Estimate I(n; N) from Haar-random matrices.
    RmtMc(RmtMcArgs),
    /// Run the exact function-field identity suite at one (q, k, ell).
    FfIdentities(FfIdentitiesArgs),
    /// Enumerate sector variances and their character-sum identity.
    FfVarianceSectors(FfVarianceSectorsArgs),
    /// Enumerate quadratic-residue variances exactly.
    FfVarianceQr(FfVarianceQrArgs),
    /// Compare enumerated variances against the matrix-model prediction
    /// across a list of q.
    CompareQsweep(CompareQsweepArgs),
    /// Cross-engine suite on the built-in small grid, with the known
    /// discrepancies recorded in the output.
    SelfCheck(SelfCheckArgs),
}

#[derive(Args, Debug)]
pub struct ComputeIArgs {
    /// Ensemble: sym or orth.
    #[arg(long, value_enum)]
    pub ensemble: Option<EnsembleArg>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Single value "4" or inclusive range "0..7".
    #[arg(long)]
    pub n: Option<String>,
    /// Matrix size parameter N.
    #[arg(long = "N")]
    pub cap: Option<usize>,
    #[arg(long, value_enum)]
    pub engine: Option<EngineArg>,
    /// Sample count for the mc engine.
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    #[arg(long, value_enum)]
    pub ensemble: Option<EnsembleArg>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long = "N")]
    pub cap: Option<usize>,
    /// ssyt or series; auto resolves to ssyt.
    #[arg(long, value_enum)]
    pub engine: Option<EngineArg>,
}

#[derive(Args, Debug)]
pub struct FitGammaArgs {
    #[arg(long, value_enum)]
    pub ensemble: Option<EnsembleArg>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Exact rational c as "a/b".
    #[arg(long)]
    pub c: Option<String>,
    /// Comma-separated dilation list overriding the automatic choice;
    /// even for sym, odd for orth, each divisible as c requires.
    #[arg(long)]
    pub dilates: Option<String>,
}

#[derive(Args, Debug)]
pub struct GammaMcArgs {
    #[arg(long, value_enum)]
    pub ensemble: Option<EnsembleArg>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Exact rational c as "a/b".
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Args, Debug)]
pub struct RmtMcArgs {
    #[arg(long, value_enum)]
    pub ensemble: Option<EnsembleArg>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long = "N")]
    pub cap: Option<usize>,
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Args, Debug)]
pub struct FfIdentitiesArgs {
    /// Odd prime field size.
    #[arg(long)]
    pub q: Option<u64>,
    /// Sector modulus exponent (modulus S^k).
    #[arg(long)]
    pub k: Option<usize>,
    /// Divisor-function order ell.
    #[arg(long)]
    pub ell: Option<usize>,
    /// Largest coefficient index checked.
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
}

#[derive(Args, Debug)]
pub struct FfVarianceSectorsArgs {
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    /// Single value or inclusive range "0..4".
    #[arg(long)]
    pub n: Option<String>,
}

#[derive(Args, Debug)]
pub struct FfVarianceQrArgs {
    #[arg(long)]
    pub q: Option<u64>,
    /// Curve-family parameter g; the averaged primes have degree 2g + 1.
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Single value or inclusive range "0..2"; requires n <= 2gk.
    #[arg(long)]
    pub n: Option<String>,
}

#[derive(Args, Debug)]
pub struct CompareQsweepArgs {
    /// sectors or qr.
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    /// Comma-separated list of odd primes.
    #[arg(long)]
    pub qs: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Required for --side sectors.
    #[arg(long)]
    pub ell: Option<usize>,
    /// Required for --side qr.
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SelfCheckArgs {}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnsembleArg {
    Sym,
    Orth,
}

impl EnsembleArg {
    pub fn to_core(self) -> momentlab_core::Ensemble {
        match self {
            EnsembleArg::Sym => momentlab_core::Ensemble::Symplectic,
            EnsembleArg::Orth => momentlab_core::Ensemble::Orthogonal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EnsembleArg::Sym => "sym",
            EnsembleArg::Orth => "orth",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineArg {
    Ssyt,
    Series,
    Closed,
    Lattice,
    Mc,
    Auto,
}

impl EngineArg {
    pub fn name(self) -> &'static str {
        match self {
            EngineArg::Ssyt => "ssyt",
            EngineArg::Series => "series",
            EngineArg::Closed => "closed",
            EngineArg::Lattice => "lattice",
            EngineArg::Mc => "mc",
            EngineArg::Auto => "auto",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Sectors,
    Qr,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Key=value pairs loaded from a config file. Blank lines and lines
/// starting with '#' are skipped; keys must be known flag names.
pub fn load_config_file(path: &PathBuf) -> Result<BTreeMap<String, String>> {
    const KNOWN: &[&str] = &[
        "ensemble", "k", "n", "N", "c", "engine", "samples", "seed", "jobs", "output", "format",
        "q", "ell", "g", "n-max", "side", "qs", "dilates",
    ];
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read config file {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "config line {} is not key=value: {line:?}",
                lineno + 1
            ))
        })?;
        let key = key.trim().to_string();
        if !KNOWN.contains(&key.as_str()) {
            return Err(Error::Parse(format!(
                "config line {} has unknown key {key:?}",
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

/// Fills a missing flag from the config map, parsing with FromStr.
pub fn fill<T>(slot: &mut Option<T>, map: &BTreeMap<String, String>, key: &str) -> Result<()>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    if slot.is_none() {
        if let Some(raw) = map.get(key) {
            let parsed = raw
                .parse::<T>()
                .map_err(|e| Error::Parse(format!("config key {key}={raw:?}: {e}")))?;
            *slot = Some(parsed);
        }
    }
    Ok(())
}

pub fn fill_ensemble(
    slot: &mut Option<EnsembleArg>,
    map: &BTreeMap<String, String>,
) -> Result<()> {
    if slot.is_none() {
        if let Some(raw) = map.get("ensemble") {
            *slot = Some(match raw.as_str() {
                "sym" | "symplectic" => EnsembleArg::Sym,
                "orth" | "orthogonal" => EnsembleArg::Orth,
                other => {
                    return Err(Error::Parse(format!(
                        "config key ensemble={other:?}: expected sym or orth"
                    )))
                }
            });
        }
    }
    Ok(())
}

pub fn fill_engine(slot: &mut Option<EngineArg>, map: &BTreeMap<String, String>) -> Result<()> {
    if slot.is_none() {
        if let Some(raw) = map.get("engine") {
            *slot = Some(match raw.as_str() {
                "ssyt" => EngineArg::Ssyt,
                "series" => EngineArg::Series,
                "closed" => EngineArg::Closed,
                "lattice" => EngineArg::Lattice,
                "mc" => EngineArg::Mc,
                "auto" => EngineArg::Auto,
                other => {
                    return Err(Error::Parse(format!(
                        "config key engine={other:?}: expected ssyt, series, closed, lattice, mc, or auto"
                    )))
                }
            });
        }
    }
    Ok(())
}

pub fn fill_side(slot: &mut Option<SideArg>, map: &BTreeMap<String, String>) -> Result<()> {
    if slot.is_none() {
        if let Some(raw) = map.get("side") {
            *slot = Some(match raw.as_str() {
                "sectors" => SideArg::Sectors,
                "qr" => SideArg::Qr,
                other => {
                    return Err(Error::Parse(format!(
                        "config key side={other:?}: expected sectors or qr"
                    )))
                }
            });
        }
    }
    Ok(())
}

pub fn fill_format(slot: &mut Option<Format>, map: &BTreeMap<String, String>) -> Result<()> {
    if slot.is_none() {
        if let Some(raw) = map.get("format") {
            *slot = Some(match raw.as_str() {
                "csv" => Format::Csv,
                "json" => Format::Json,
                other => {
                    return Err(Error::Parse(format!(
                        "config key format={other:?}: expected csv or json"
                    )))
                }
            });
        }
    }
    Ok(())
}

/// A required value after the flag/config merge.
pub fn require<T>(slot: Option<T>, flag: &str) -> Result<T> {
    slot.ok_or_else(|| Error::Parse(format!("missing required value: pass --{flag} or set {flag}= in the config file")))
}

/// Parses "4" or an inclusive range "0..7" into the list of values.
pub fn parse_span(raw: &str) -> Result<Vec<usize>> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("invalid index {s:?}: {e}")))
    };
    if let Some((lo, hi)) = raw.split_once("..") {
        let lo = parse_one(lo)?;
        let hi = parse_one(hi)?;
        if hi < lo {
            return Err(Error::Parse(format!("empty range {raw:?}")));
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![parse_one(raw)?])
    }
}

/// Parses an exact rational "a/b" (or a bare integer "a") with b > 0.
pub fn parse_rational(raw: &str) -> Result<(u64, u64)> {
    let bad = |detail: &str| Error::Parse(format!("unparseable rational {raw:?}: {detail}"));
    let (num, den) = match raw.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (raw.trim(), "1"),
    };
    let num = num
        .parse::<u64>()
        .map_err(|_| bad("numerator is not a nonnegative integer"))?;
    let den = den
        .parse::<u64>()
        .map_err(|_| bad("denominator is not a positive integer"))?;
    if den == 0 {
        return Err(bad("denominator is zero"));
    }
    Ok((num, den))
}

/// Parses a comma-separated list of nonnegative integers.
pub fn parse_list(raw: &str) -> Result<Vec<u64>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("invalid list entry {s:?}: {e}")))
        })
        .collect()
}
