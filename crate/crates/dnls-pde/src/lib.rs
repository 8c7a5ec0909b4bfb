//! Pseudospectral reference solver for iq_t + q_xx + iεq²q̄_x + ½|q|⁴q = 0 on a
//! periodic box, and the IST solution operator it is compared against.
//!
//! The linear part is propagated exactly in Fourier space; the nonlinear part is
//! advanced by a registered integrating-factor Runge–Kutta scheme ([`stepper_registry`]).

mod error;
mod evolve;
mod ist;
mod spectral;
mod stepper;

pub use error::{PdeError, Result};
pub use evolve::{evolve_pde, mass, EvolutionConfig, Evolution, MonitorSample, Pde};
pub use ist::{evolve_ist, Ist};
pub use spectral::SpectralSystem;
pub use stepper::{stepper_registry, IfRk2, IfRk4, StepperRegistry, TimeStepper};
