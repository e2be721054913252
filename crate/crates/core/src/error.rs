use thiserror::Error;

/// Errors raised by the numerical kernels and the physics layers built on them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("domain error in {function}: {reason}")]
    Domain {
        function: &'static str,
        reason: String,
    },

    #[error("{function} did not converge after {terms} terms (partial sum {partial})")]
    SeriesNotConverged {
        function: &'static str,
        partial: f64,
        terms: usize,
    },

    #[error(
        "adaptive quadrature did not converge: estimate {estimate}, error bound {error_bound}"
    )]
    QuadratureNotConverged { estimate: f64, error_bound: f64 },

    #[error("erfi({x}) overflows; use erfi_scaled_envelope for large arguments")]
    ErfiOverflow { x: f64 },

    #[error("wave-vector residual {residual:e} exceeds tolerance {tolerance:e} for n = {n}")]
    WaveVectorResidual {
        n: i64,
        residual: f64,
        tolerance: f64,
    },

    #[error("found {} of {requested} levels (lambda = {lambda}, theta = {theta}): {found:?}", found.len())]
    MissingLevels {
        lambda: f64,
        theta: f64,
        requested: usize,
        found: Vec<f64>,
    },

    #[error("ambiguous bracket [{lo}, {hi}] (lambda = {lambda}, theta = {theta}): {reason}")]
    AmbiguousBracket {
        lambda: f64,
        theta: f64,
        lo: f64,
        hi: f64,
        reason: String,
    },

    #[error("mode {k} at theta = {theta}: {source}")]
    ModeSolve {
        k: usize,
        theta: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field,
        reason: reason.into(),
    }
}

pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Error {
    Error::Domain {
        function,
        reason: reason.into(),
    }
}
