use thiserror::Error;

/// Errors raised by the solver, the norms and the diagnostic probes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("non-finite multiplier value at mode {mode:?} (wavenumber {wavenumber:?})")]
    NonFiniteMultiplier { mode: Vec<usize>, wavenumber: Vec<f64> },

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("homogeneous Sobolev norm with s = {s} < 0 needs a mean-free field (zero mode {zero_mode:e})")]
    NonzeroMean { s: f64, zero_mode: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite value at step {step} (t = {time}); the time step is likely too large")]
    NonFinite { step: usize, time: f64 },

    #[error("L2 norm increased at step {step}: {before:e} -> {after:e}")]
    MonotonicityViolation { step: usize, before: f64, after: f64 },

    #[error("trajectory too short: {0}")]
    TrajectoryTooShort(String),

    #[error("time {0} is not a snapshot time")]
    NotASnapshotTime(f64),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid radial profile: {0}")]
    InvalidProfile(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
