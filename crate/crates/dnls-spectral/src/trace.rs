//! Trace formulas: the transmission coefficients are fixed by |ρ| on the line
//! and the eigenvalues alone.

use crate::error::Result;
use crate::types::{Potential, ReflectionCoefficient, ScatteringData};
use dnls_numerics::{cauchy_integral, CauchyPlan, ComplexGrid1D, C64, I};

/// L(λ) = log(1 − ελ|ρ(λ)|²) on the ρ grid.
pub fn log_defect(rho: &ReflectionCoefficient) -> ComplexGrid1D {
    let e = rho.epsilon.sign();
    rho.grid.map(|lam, r| C64::new((-e * lam * r.norm_sqr()).ln_1p(), 0.0))
}

/// α(λ) for Im λ < 0.
pub fn trace_alpha(data: &ScatteringData, lam: C64) -> Result<C64> {
    let blaschke: C64 = data.discrete.pairs().iter().map(|p| (lam - p.lambda.conj()) / (lam - p.lambda)).product();
    let l = log_defect(&data.rho);
    if data.rho.is_zero() {
        return Ok(blaschke);
    }
    Ok(blaschke * cauchy_integral(&l, lam)?.exp())
}

/// ᾰ(λ) for Im λ > 0; equals conj(α(λ̄)).
pub fn trace_alpha_breve(data: &ScatteringData, lam: C64) -> Result<C64> {
    let blaschke: C64 = data.discrete.pairs().iter().map(|p| (lam - p.lambda) / (lam - p.lambda.conj())).product();
    if data.rho.is_zero() {
        return Ok(blaschke);
    }
    Ok(blaschke * (-cauchy_integral(&log_defect(&data.rho), lam)?).exp())
}

/// ᾰ'(λ_k) at the k-th eigenvalue, from the factorized trace formula.
pub fn trace_alpha_breve_deriv_at(data: &ScatteringData, k: usize) -> Result<C64> {
    let pairs = data.discrete.pairs();
    let lk = pairs[k].lambda;
    let mut rest: C64 = pairs
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, p)| (lk - p.lambda) / (lk - p.lambda.conj()))
        .product();
    if !data.rho.is_zero() {
        rest *= (-cauchy_integral(&log_defect(&data.rho), lk)?).exp();
    }
    Ok(rest / (lk - lk.conj()))
}

/// Boundary values of α/ᾰ on the real line (α from below, ᾰ from above), on the ρ grid.
pub fn alpha_over_breve_on_line(data: &ScatteringData) -> ComplexGrid1D {
    let l = log_defect(&data.rho);
    let (p, m) = CauchyPlan::new(l.n()).project_both(&l);
    l.with_values(
        l.nodes()
            .into_iter()
            .enumerate()
            .map(|(j, lam)| {
                let b: C64 = data
                    .discrete
                    .pairs()
                    .iter()
                    .map(|q| {
                        let r = (lam - q.lambda.conj()) / (lam - q.lambda);
                        r * r
                    })
                    .product();
                b * (p.values[j] + m.values[j]).exp()
            })
            .collect(),
    )
}

/// Both sides of the Plancherel identity:
/// exp(iε∫|q|²) and exp(−4iΣ arg λ_k − (i/π)∫ log(1 − ελ|ρ|²)/λ dλ).
pub fn plancherel_sides(q: &Potential, data: &ScatteringData) -> (C64, C64) {
    let e = q.epsilon.sign();
    let lhs = (I * e * q.l2_norm_sq()).exp();

    // L(λ)/λ with L = log(1 − ελ|ρ|²) is finite at λ = 0, where it equals −ε|ρ(0)|²;
    // log1p keeps nearby nodes accurate as well.
    let g = &data.rho.grid;
    let er = data.rho.epsilon.sign();
    let integrand = g.map(|lam, r| {
        let m = r.norm_sqr();
        if lam == 0.0 {
            C64::new(-er * m, 0.0)
        } else {
            C64::new((-er * lam * m).ln_1p() / lam, 0.0)
        }
    });
    let integral = integrand.trapezoid();
    let args: f64 = data.discrete.pairs().iter().map(|p| p.lambda.arg()).sum();
    let rhs = (I * (-4.0 * args) - I * integral / std::f64::consts::PI).exp();
    (lhs, rhs)
}
