use thiserror::Error;

/// Errors raised by field operations, the solver and the study drivers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("field has nonzero mean (|mean| = {0:e}); operator is only defined on mean-zero fields")]
    NonzeroMean(f64),

    #[error("grid with {points} points per axis cannot dealias products truncated at {truncation}; need at least {required}")]
    Aliasing {
        points: usize,
        truncation: usize,
        required: usize,
    },

    #[error("invalid exponent p = {0}; need p >= 1")]
    InvalidExponent(f64),

    #[error("negative time step {0}")]
    NegativeTimeStep(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("zero field where a nonzero field is required")]
    ZeroField,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("Picard iteration did not contract after {iterations} iterations (last sup difference {last_difference:e})")]
    NonContraction {
        iterations: usize,
        last_difference: f64,
    },

    #[error("snapshot format: {0}")]
    Snapshot(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
