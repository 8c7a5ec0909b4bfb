use crate::types::{ReflectionCoefficient, ScatteringData};
use dnls_numerics::{C64, I};

/// Linear time evolution of scattering data: ρ(λ) ↦ e^{−4iλ²t}ρ(λ), C_k ↦ C_k e^{4iλ_k²t}.
///
/// The norming constants rotate with the opposite sign to ρ: this is what keeps
/// synthesized solitons solutions of the equation (checked against the PDE solver).
pub fn flow(data: &ScatteringData, t: f64) -> ScatteringData {
    let rho = data.rho.grid.map(|lam, r| r * C64::new(0.0, -4.0 * lam * lam * t).exp());
    let discrete = data.discrete.map_constants(|p| p.c * (I * 4.0 * p.lambda * p.lambda * t).exp());
    ScatteringData {
        rho: ReflectionCoefficient { grid: rho, epsilon: data.rho.epsilon },
        discrete,
        epsilon: data.epsilon,
    }
}
