//! Direct scattering: q ↦ (ρ, {λ_k, C_k}).
//!
//! Jost solutions are carried across the x-grid by a pluggable one-step
//! propagator (see [`integrator_registry`]); the transition matrix is formed
//! at the node nearest x = 0, eigenvalues are located as zeros of α in the
//! lower half plane, and norming constants come from the proportionality of
//! the analytic Jost columns at each eigenvalue.

mod error;
mod integrator;
mod jost;
mod mat2;
mod scatter;

pub use error::{DirectError, Result};
pub use integrator::{integrator_registry, IntegratorRegistry, JostIntegrator, Magnus4, Rk4};
pub use jost::{Columns, Direct, JostSolution, Prepared, Which};
pub use mat2::M2;
pub use scatter::NormingDetail;

use dnls_numerics::{Grid1D, SearchRegion, C64};
use dnls_spectral::{DiscreteSpectrum, Potential, ReflectionCoefficient, ScatteringData};

/// Default x-grid: [−30, 30] with 4096 nodes.
pub fn default_x_grid() -> Grid1D {
    Grid1D { min: -30.0, max: 30.0, n: 4096 }
}

/// Default λ-grid: [−40, 40] with 4096 nodes.
pub fn default_lambda_grid() -> Grid1D {
    Grid1D { min: -40.0, max: 40.0, n: 4096 }
}

pub fn jost(q: &Potential, lam: C64, which: Which) -> Result<JostSolution> {
    Direct::default().jost(q, lam, which, Columns::Both)
}

pub fn transition(q: &Potential, lam_grid: Grid1D) -> Result<(dnls_numerics::ComplexGrid1D, dnls_numerics::ComplexGrid1D)> {
    Direct::default().transition(q, lam_grid)
}

pub fn reflection(q: &Potential, lam_grid: Grid1D) -> Result<ReflectionCoefficient> {
    Direct::default().reflection(q, lam_grid)
}

pub fn alpha_lower(q: &Potential, lam: C64) -> Result<C64> {
    Direct::default().alpha_lower(q, lam)
}

pub fn eigenvalues(q: &Potential, region: &SearchRegion) -> Result<Vec<C64>> {
    Direct::default().eigenvalues(q, region)
}

pub fn norming_constants(q: &Potential, eigen: &[C64]) -> Result<DiscreteSpectrum> {
    Direct::default().norming_constants(q, eigen)
}

pub fn scatter(q: &Potential, lam_grid: Grid1D, region: &SearchRegion) -> Result<ScatteringData> {
    Direct::default().scatter(q, lam_grid, region)
}
