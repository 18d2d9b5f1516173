//! Error type shared by all exact engines.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Parts not weakly decreasing, or a zero part.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// Tableau content does not add up to the shape weight.
    #[error("content mismatch: m + n = {got} but |shape| = {expected}")]
    ContentMismatch { expected: u64, got: u64 },

    /// Argument outside the range an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Closed form requested outside its validity range.
    #[error("range error: {0}")]
    Range(String),

    /// A division that must be exact left a remainder.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    /// Series coefficient requested beyond the truncation order.
    #[error("truncation order exceeded: {0}")]
    Truncation(String),

    /// A quasi-polynomial fit did not reproduce its held-out samples.
    #[error("fit failure: {0}")]
    FitFailure(String),

    /// Too few samples for the requested fit.
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    /// Monte Carlo sampler produced no usable sample.
    #[error("sampling failure: {0}")]
    Sampling(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// Two engines that must agree did not.
    #[error("consistency failure: {0}")]
    Consistency(String),
}
