//! Data model for the scattering lab: potentials, reflection coefficients,
//! discrete spectra, the linear time flow on scattering data, the gauge maps
//! between the two forms of the equation, trace formulas and the Plancherel identity.

mod error;
mod flow;
mod gauge;
mod io;
mod trace;
mod types;

pub use error::{Result, SpectralError};
pub use flow::flow;
pub use gauge::{gauge_forward, gauge_inverse};
pub use io::{potential_from_csv, potential_to_csv, read_potential_csv, read_scattering_json, write_potential_csv, write_scattering_json};
pub use trace::{alpha_over_breve_on_line, log_defect, plancherel_sides, trace_alpha, trace_alpha_breve, trace_alpha_breve_deriv_at};
pub use types::{DiscreteSpectrum, Eigenpair, Epsilon, Potential, ReflectionCoefficient, ScatteringData};
