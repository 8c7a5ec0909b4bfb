use dnls_numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("invalid discrete spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("reflection coefficient violates 1 − ελ|ρ|² > 0 at λ = {lam} (value {value:e})")]
    Constraint { lam: f64, value: f64 },
    #[error("epsilon must be +1 or −1, got {0}")]
    BadEpsilon(i64),
    #[error("epsilon mismatch between reflection coefficient ({rho}) and scattering data ({data})")]
    EpsilonMismatch { rho: i8, data: i8 },
    #[error("malformed input: {0}")]
    Format(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
