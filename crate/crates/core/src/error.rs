use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by evaluation, quadrature, sampling and the verification driver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("product truncation not reached within {max_terms} factors (argument {arg})")]
    Truncation { arg: Complex64, max_terms: usize },

    #[error("argument {arg} lies within {radius:e} of a pole (factor magnitude {factor:e})")]
    NearPole {
        arg: Complex64,
        factor: f64,
        radius: f64,
    },

    #[error("identity instance rejected: {0}")]
    Instance(String),

    #[error("quadrature did not converge at M = {nodes} (estimates {previous} and {last})")]
    Quadrature {
        nodes: usize,
        previous: Complex64,
        last: Complex64,
    },

    #[error("parameter sampling failed after {attempts} attempts: {reason}")]
    Sampling { attempts: usize, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
