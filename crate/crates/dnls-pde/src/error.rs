use dnls_numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PdeError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Direct(#[from] dnls_direct::DirectError),
    #[error(transparent)]
    Inverse(#[from] dnls_inverse::InverseError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("initial data are not small at the box edges (edge/max = {ratio:e}); enlarge the box")]
    NotPeriodic { ratio: f64 },
    #[error("blow-up at t = {t}: max|q| = {max:e}")]
    BlowUp { t: f64, max: f64 },
}

pub type Result<T> = std::result::Result<T, PdeError>;
