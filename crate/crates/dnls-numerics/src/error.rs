use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("Gamma has a pole at z = {re}{im:+}i")]
    GammaPole { re: f64, im: f64 },
    #[error("Cauchy integral evaluated too close to the contour (|Im z| = {dist:e} < {min:e})")]
    ContourProximity { dist: f64, min: f64 },
    #[error("invalid search region: {0}")]
    InvalidRegion(String),
    #[error("function nearly vanishes on a sub-rectangle boundary near {re}{im:+}i (|f| = {value:e})")]
    BoundaryZero { re: f64, im: f64, value: f64 },
    #[error("Newton iteration did not converge near {re}{im:+}i (|f| = {residual:e})")]
    NewtonFailed { re: f64, im: f64, residual: f64 },
    #[error("zero cluster of multiplicity {count} could not be separated at depth {depth}")]
    UnresolvedCluster { count: i64, depth: usize },
    #[error("unknown strategy `{name}` (available: {available})")]
    UnknownStrategy { name: String, available: String },
}

pub type Result<T> = std::result::Result<T, NumericsError>;
