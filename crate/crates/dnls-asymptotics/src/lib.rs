//! Long-time predictions from scattering data: κ and δ at the stationary point,
//! parabolic-cylinder amplitudes, the soliton-plus-radiation profile in a cone,
//! the pure-radiation profile, and the gauge-transformed profile for u.

mod amplitude;
mod cone;
mod error;
mod kappa;

pub use amplitude::{pc_amplitude, PCAmplitude};
pub use cone::{dispersive_profile, gauge_factors, gauge_phase, q_asymptotic, u_asymptotic, ConeWindow, GaugeBranch, QParts, UPrediction};
pub use dnls_solitons::{phase_shifts as asymptotic_phases, PhaseShifts};
pub use error::{AsymptoticsError, Result};
pub use kappa::{delta_fn, kappa, kappa_over_xi, log_kernel_integral, rho_value};
