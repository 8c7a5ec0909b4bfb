use dnls_numerics::{NumericsError, C64};
use dnls_spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DirectError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("Jost solution overflow at λ = {lam}, x = {x} (|N| = {size:e}); restrict to the analytic column")]
    Overflow { lam: C64, x: f64, size: f64 },
    #[error("spectral singularity: |α({lam})| = {alpha_abs:e}")]
    SpectralSingularity { lam: f64, alpha_abs: f64 },
    #[error("degenerate derivative: |ᾰ'({lam})| = {value:e}")]
    DegenerateDerivative { lam: C64, value: f64 },
    #[error("Jost columns at {lam} are not proportional (relative residual {residual:e})")]
    Inconsistent { lam: C64, residual: f64 },
    #[error("search region must lie in Im λ < −{margin} (got im_max = {im_max})")]
    RegionMargin { im_max: f64, margin: f64 },
}

pub type Result<T> = std::result::Result<T, DirectError>;
