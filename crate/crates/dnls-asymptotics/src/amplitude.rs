use crate::error::{AsymptoticsError, Result};
use crate::kappa::{kappa, kappa_over_xi, log_kernel_integral, rho_value};
use dnls_numerics::{gamma_complex, C64, I};
use dnls_solitons::Direction;
use dnls_spectral::ReflectionCoefficient;
use std::f64::consts::{FRAC_PI_4, PI};

/// Parabolic-cylinder amplitudes at the critical point ξ.
#[derive(Debug, Clone, Copy)]
pub struct PCAmplitude {
    pub a12: C64,
    pub a21: C64,
    pub xi: f64,
    pub eta: Direction,
    pub t: f64,
    pub kappa: f64,
}

/// Phase of A₁₂ without the explicit t-dependence:
/// π/4 − arg(−εξρ̄(ξ)) + η argΓ(iκ) + (1/π)∫ log|ξ−λ| dL over λ < ξ (η = +1) or λ > ξ (η = −1).
pub(crate) fn static_phase(xi: f64, eta: Direction, rho: &ReflectionCoefficient, k: f64) -> Result<f64> {
    let e = rho.epsilon.sign();
    let r = rho_value(rho, xi)?;
    // Γ(iκ) = Γ(1 + iκ)/(iκ) stays finite-argument for tiny κ
    let g = gamma_complex(C64::new(1.0, k))? / C64::new(0.0, k);
    let j = match eta {
        Direction::Future => log_kernel_integral(rho, xi, true),
        Direction::Past => log_kernel_integral(rho, xi, false),
    };
    let s = eta.sign();
    Ok(FRAC_PI_4 - (-e * xi * r.conj()).arg() + s * g.arg() + j / PI)
}

pub fn pc_amplitude(xi: f64, eta: Direction, rho: &ReflectionCoefficient, t: f64) -> Result<PCAmplitude> {
    if xi == 0.0 {
        return Err(AsymptoticsError::Domain { xi, reason: "ξ = 0" });
    }
    if t == 0.0 {
        return Err(AsymptoticsError::ZeroTime);
    }
    let e = rho.epsilon.sign();
    let k = kappa(xi, rho)?;
    if k == 0.0 {
        let z = C64::new(0.0, 0.0);
        return Ok(PCAmplitude { a12: z, a21: z, xi, eta, t, kappa: k });
    }
    let m2 = e * kappa_over_xi(xi, rho)?;
    if m2 < 0.0 {
        return Err(AsymptoticsError::Domain { xi, reason: "εκ(ξ)/ξ < 0" });
    }
    let phase = static_phase(xi, eta, rho, k)? - eta.sign() * k * (8.0 * t).abs().ln() + 4.0 * t * xi * xi;
    let a12 = m2.sqrt() * (I * phase).exp();
    Ok(PCAmplitude { a12, a21: e * xi * a12.conj(), xi, eta, t, kappa: k })
}
