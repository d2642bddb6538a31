use thiserror::Error;

/// Errors produced by the numerical routines.
///
/// Messages are static so the type stays `Copy` and usable without `std`.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// A [`ModelParams`](crate::ModelParams) invariant is violated.
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    /// An argument lies outside the supported domain of a function.
    #[error("argument out of domain: {0}")]
    Domain(&'static str),
    /// The input sits on a measure-zero degenerate configuration.
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    /// The requested combination of options is not implemented.
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    /// Adaptive quadrature hit its subdivision limit.
    #[error("integration did not converge (best estimate {estimate:e}, error estimate {error:e})")]
    IntegrationFailure { estimate: f64, error: f64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
