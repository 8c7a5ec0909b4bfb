use dnls_numerics::NumericsError;
use dnls_solitons::SolitonError;
use dnls_spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AsymptoticsError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Soliton(#[from] SolitonError),
    #[error("1 − εξ|ρ(ξ)|² = {value} ≤ 0 at ξ = {xi}")]
    Constraint { xi: f64, value: f64 },
    #[error("ξ = {xi} lies outside the reflection-coefficient grid [{min}, {max}]")]
    OutsideGrid { xi: f64, min: f64, max: f64 },
    #[error("amplitude undefined at ξ = {xi}: {reason}")]
    Domain { xi: f64, reason: &'static str },
    #[error("invalid cone: {0}")]
    Cone(&'static str),
    #[error("long-time formulas need t ≠ 0")]
    ZeroTime,
}

pub type Result<T> = std::result::Result<T, AsymptoticsError>;
