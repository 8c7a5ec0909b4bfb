use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad argument: {0}")]
    Args(String),
    #[error(transparent)]
    Numerics(#[from] dnls_numerics::NumericsError),
    #[error(transparent)]
    Spectral(#[from] dnls_spectral::SpectralError),
    #[error(transparent)]
    Direct(#[from] dnls_direct::DirectError),
    #[error(transparent)]
    Inverse(#[from] dnls_inverse::InverseError),
    #[error(transparent)]
    Soliton(#[from] dnls_solitons::SolitonError),
    #[error(transparent)]
    Asymptotics(#[from] dnls_asymptotics::AsymptoticsError),
    #[error(transparent)]
    Family(#[from] dnls_family::FamilyError),
    #[error(transparent)]
    Pde(#[from] dnls_pde::PdeError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
