use crate::error::{InverseError, Result};
use dnls_spectral::{alpha_over_breve_on_line, trace_alpha_breve_deriv_at, DiscreteSpectrum, Eigenpair, ReflectionCoefficient, ScatteringData};

const BREVE_FLOOR: f64 = 1e-6;

/// Scattering data of the problem normalized at x → −∞:
/// ρ^ℓ = ρ α/ᾰ on the line, C^ℓ_k = 1/(C_k ᾰ'(λ_k)²), both from the trace formulas.
pub fn left_data(s: &ScatteringData) -> Result<ScatteringData> {
    let e = s.epsilon.sign();
    // |ᾰ|² = 1/(1 − ελ|ρ|²) on the line
    for (lam, r) in s.rho.grid.nodes().into_iter().zip(&s.rho.grid.values) {
        let v = (1.0 - e * lam * r.norm_sqr()).powf(-0.5);
        if !(v >= BREVE_FLOOR) {
            return Err(InverseError::SpectralSingularity { lam, value: v });
        }
    }
    let rho = if s.rho.is_zero() {
        s.rho.clone()
    } else {
        let ratio = alpha_over_breve_on_line(s);
        let g = s.rho.grid.with_values(s.rho.grid.values.iter().zip(&ratio.values).map(|(r, q)| r * q).collect());
        ReflectionCoefficient { grid: g, epsilon: s.epsilon }
    };
    let mut pairs = Vec::with_capacity(s.discrete.len());
    for (k, p) in s.discrete.pairs().iter().enumerate() {
        let d = trace_alpha_breve_deriv_at(s, k)?;
        pairs.push(Eigenpair { lambda: p.lambda, c: 1.0 / (p.c * d * d) });
    }
    Ok(ScatteringData { rho, discrete: DiscreteSpectrum::new(pairs)?, epsilon: s.epsilon })
}
