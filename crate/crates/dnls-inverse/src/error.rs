use dnls_numerics::{NumericsError, C64};
use dnls_spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InverseError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("{solver} did not converge after {iterations} iterations (residual {residual:e}); data may be near the edge of admissibility")]
    NoConvergence { solver: &'static str, iterations: usize, residual: f64 },
    #[error("solution residual {residual:e} exceeds {tol:e} at x = {x}")]
    Residual { x: f64, residual: f64, tol: f64 },
    #[error("spectral singularity: |ᾰ({lam})| = {value:e}")]
    SpectralSingularity { lam: f64, value: f64 },
    #[error("pole {lam} too close to the real line for the λ-grid (|Im λ| < {min})")]
    PoleNearLine { lam: C64, min: f64 },
}

pub type Result<T> = std::result::Result<T, InverseError>;
