//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by distribution, estimation, series, and quadrature routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A distribution or algorithm parameter is outside its admissible range.
    #[error("invalid parameter {name}: {value} ({reason})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A function argument lies outside the domain of the operation.
    #[error("domain error for {name}: {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// An input slice was empty where at least one value is required.
    #[error("input sequence is empty")]
    EmptyInput,

    /// The data admit no maximum-likelihood estimate in the open parameter space.
    #[error("degenerate sample: {0}")]
    Degenerate(&'static str),

    /// A candidate record sequence fails the strict-increase requirement.
    #[error("values are not strictly increasing at index {index}")]
    NotIncreasing { index: usize },

    /// The adaptive integrator exhausted its subdivision budget.
    #[error(
        "quadrature did not converge: estimate {estimate:e} with error bound {error_bound:e} \
         after {segments} segments"
    )]
    QuadratureDidNotConverge {
        estimate: f64,
        error_bound: f64,
        segments: u32,
    },

    /// The series value for the expected plug-in density lost its sign to cancellation,
    /// so a ratio built on it would be meaningless.
    #[error("expected plug-in density is non-positive after cancellation: {value:e}")]
    NonPositiveExpectedPdf { value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
