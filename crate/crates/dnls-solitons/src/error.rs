use dnls_numerics::C64;
use dnls_spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolitonError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("evaluation at a pole: λ = {lam}")]
    Pole { lam: C64 },
    #[error("soliton system is singular (condition number {cond:e})")]
    Singular { cond: f64 },
    #[error("phase shifts need distinct real parts: Re λ_{j} = Re λ_{k}")]
    Degenerate { j: usize, k: usize },
    #[error("eigenvalue index {k} out of range (N = {n})")]
    Index { k: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, SolitonError>;
