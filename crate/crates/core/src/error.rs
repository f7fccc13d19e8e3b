use num_complex::Complex64;
use thiserror::Error;

/// Every failure the evaluators and verifiers can report.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("hbar must be a finite positive real, got {0}")]
    InvalidHbar(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("gamma pole: argument {arg} is a nonpositive integer (within tolerance)")]
    Pole { arg: Complex64 },

    #[error("gamma pole in factor ({i}, {j}): lambda_{i} - lambda_{j} = {diff}")]
    PairPole { i: usize, j: usize, diff: f64 },

    #[error("non-generic spectrum: lambda_{i} - lambda_{j} = {diff} is within {margin:e} of hbar*Z")]
    NonGeneric {
        i: usize,
        j: usize,
        diff: f64,
        margin: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: truncation estimate {estimate:e} exceeds tol = {tol:e}")]
    NonConvergence { estimate: f64, tol: f64 },

    #[error("desk-scale limit: m = {0} > 3 is not supported by the tensor-product quadrature")]
    DeskScaleLimit(usize),

    #[error("contour search gave up at half extent {half_extent} (limit {limit})")]
    ContourGiveUp { half_extent: f64, limit: f64 },

    #[error("coincident variables at positions {0} and {1}")]
    Coincident(usize, usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("inconsistent constraints: {0}")]
    Inconsistent(String),

    #[error("could not draw a non-singular sample after {0} attempts")]
    SamplingExhausted(usize),
}

impl Error {
    /// Numerical-domain failures, as opposed to malformed inputs.
    pub fn is_numerical_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::PairPole { .. }
                | Error::NonGeneric { .. }
                | Error::Domain(_)
                | Error::NonConvergence { .. }
                | Error::ContourGiveUp { .. }
                | Error::Coincident(..)
                | Error::SamplingExhausted(_)
        )
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidHbar(_) => "invalid_hbar",
            Error::InvalidInput(_) => "invalid_input",
            Error::Pole { .. } => "pole",
            Error::PairPole { .. } => "pair_pole",
            Error::NonGeneric { .. } => "non_generic",
            Error::Domain(_) => "domain",
            Error::NonConvergence { .. } => "non_convergence",
            Error::DeskScaleLimit(_) => "desk_scale_limit",
            Error::ContourGiveUp { .. } => "contour_give_up",
            Error::Coincident(..) => "coincident",
            Error::IndexOutOfRange(_) => "index_out_of_range",
            Error::Inconsistent(_) => "inconsistent_constraints",
            Error::SamplingExhausted(_) => "sampling_exhausted",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
