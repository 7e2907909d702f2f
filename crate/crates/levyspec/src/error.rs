//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Model parameters violate an invariant (negative variance, branch-cut
    /// crossing, divergent exponential moment, ...).
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// Malformed or inconsistent input data (quote files, configs).
    #[error("data error: {0}")]
    Data(String),

    /// A quote file row failed to parse or violated an invariant.
    #[error("quote file row {row}: {msg}")]
    QuoteRow { row: usize, msg: String },

    /// A spectral log argument came within 1e-12 of the origin.
    #[error("ill-conditioned frequency u = {u}: |log argument| = {magnitude:.3e}")]
    IllConditioned { u: f64, magnitude: f64 },

    /// A linear system for weights or kernel coefficients was singular.
    #[error("singular system: {0}")]
    Singular(String),

    /// Numerical failure in pricing or inversion (aliasing, divergence).
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 for data problems, 2 for numerical
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Data(_) | Error::QuoteRow { .. } | Error::Io(_) | Error::Json(_)
            | Error::Csv(_) | Error::InvalidModel(_) => 1,
            Error::IllConditioned { .. } | Error::Singular(_) | Error::Numerical(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
