use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {terms} terms")]
    SeriesNotConverged { terms: usize },

    #[error("result overflowed: {0}")]
    Overflow(String),

    #[error("quadrature did not reach tolerance after {refinements} refinements (estimate {estimate:e}, error {error:e})")]
    QuadratureNotConverged {
        refinements: u32,
        estimate: f64,
        error: f64,
    },

    #[error("integrand has not decayed at window endpoint t = {t} (|g| / peak = {ratio:e})")]
    NonDecayedTails { t: f64, ratio: f64 },

    #[error("integrand is not finite at t = {t}")]
    NonFiniteIntegrand { t: f64 },

    #[error("invalid quadrature settings: {0}")]
    InvalidQuadratureSpec(String),

    #[error("middle integral vanishes; quotient undefined")]
    ZeroMiddle,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("minimum sits at the window endpoint {at}")]
    NoInteriorMinimum { at: f64 },

    #[error("minimum sits at the search limit kappa = {k_max}; enlarge the window")]
    WindowTooSmall { k_max: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
