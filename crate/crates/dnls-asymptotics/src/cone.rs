use crate::amplitude::{pc_amplitude, PCAmplitude};
use crate::error::{AsymptoticsError, Result};
use crate::kappa::{kappa, kappa_over_xi, log_kernel_integral, rho_value};
use dnls_numerics::{gamma_complex, parabolic_cylinder_d_diag, ComplexGrid1D, C64, I};
use dnls_solitons::{half_line, q_nsoliton_on, reduce_window, solve_system, Direction};
use dnls_spectral::{log_defect, DiscreteSpectrum, Epsilon, ReflectionCoefficient, ScatteringData};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

/// Below this |ξ| the amplitude phase is taken at a nudged ξ (its limit is continuous).
const XI_NUDGE: f64 = 1e-9;
/// Step and padding for the x-quadratures of the gauge factor.
const GAUGE_STEP: f64 = 0.01;
const GAUGE_PAD: f64 = 40.0;

/// Space-time cone {x = x₀ + vt : v ∈ [v₁, v₂], x₀ ∈ [x₁, x₂]}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeWindow {
    pub v1: f64,
    pub v2: f64,
    pub x1: f64,
    pub x2: f64,
}

impl ConeWindow {
    pub fn new(v1: f64, v2: f64, x1: f64, x2: f64) -> Result<Self> {
        if !(v1 < v2) {
            return Err(AsymptoticsError::Cone("need v1 < v2"));
        }
        if !(x1 <= x2) {
            return Err(AsymptoticsError::Cone("need x1 ≤ x2"));
        }
        Ok(Self { v1, v2, x1, x2 })
    }

    /// Cone around a single velocity.
    pub fn around(v: f64, half_width: f64) -> Result<Self> {
        Self::new(v - half_width, v + half_width, -half_width, half_width)
    }

    /// I = [−v₂/4, −v₁/4].
    pub fn interval(&self) -> (f64, f64) {
        (-self.v2 / 4.0, -self.v1 / 4.0)
    }

    /// x-extent of the cone at time t.
    pub fn x_range(&self, t: f64) -> (f64, f64) {
        let (a, b) = (self.v1 * t, self.v2 * t);
        (self.x1 + a.min(b), self.x2 + a.max(b))
    }

    pub fn contains(&self, x: f64, t: f64) -> bool {
        let (lo, hi) = self.x_range(t);
        x >= lo && x <= hi
    }

    /// x at the centre of the cone at time t.
    pub fn center(&self, t: f64) -> f64 {
        let (lo, hi) = self.x_range(t);
        0.5 * (lo + hi)
    }
}

/// Decomposition of a [`q_asymptotic`] prediction.
#[derive(Debug, Clone)]
pub struct QParts {
    pub q_sol: C64,
    /// |t|^{−1/2} f(x, t).
    pub correction: C64,
    pub xi: f64,
    pub eta: Direction,
    pub amplitude: PCAmplitude,
    /// Modified discrete data D_I.
    pub reduced: DiscreteSpectrum,
    /// N^sol(ξ).
    pub nsol: [[C64; 2]; 2],
}

fn check_point(w: &ConeWindow, x: f64, t: f64) -> Result<()> {
    if t.abs() < 1.0 {
        return Err(if t == 0.0 { AsymptoticsError::ZeroTime } else { AsymptoticsError::Cone("need |t| ≥ 1") });
    }
    if !w.contains(x, t) {
        return Err(AsymptoticsError::Cone("(x, t) lies outside the cone"));
    }
    Ok(())
}

fn amplitude_at(xi: f64, eta: Direction, rho: &ReflectionCoefficient, t: f64) -> Result<PCAmplitude> {
    let mut a = pc_amplitude(if xi.abs() < XI_NUDGE { XI_NUDGE } else { xi }, eta, rho, t)?;
    a.xi = xi;
    Ok(a)
}

fn expand(s: &ScatteringData, w: &ConeWindow, x: f64, t: f64) -> Result<QParts> {
    check_point(w, x, t)?;
    let xi = -x / (4.0 * t);
    let eta = Direction::of(t);
    let e = s.epsilon.sign();
    let reduced = reduce_window(&s.discrete, &s.rho, w.interval(), xi, eta)?;
    let coeffs = solve_system(&reduced, s.epsilon, xi, eta, x, t)?;
    let q_sol = coeffs.q();
    let amp = amplitude_at(xi, eta, &s.rho, t)?;
    let n = coeffs.matrix(C64::new(xi, 0.0))?;
    let f = FRAC_1_SQRT_2 * (amp.a12 * n[0][0] * n[0][0] + e * xi * amp.a12.conj() * n[0][1] * n[0][1]);
    let correction = f / t.abs().sqrt();
    Ok(QParts { q_sol, correction, xi, eta, amplitude: amp, reduced, nsol: n })
}

/// Soliton-plus-dispersion prediction q_sol(x, t; D_I) + |t|^{−1/2} f(x, t) in the cone.
pub fn q_asymptotic(s: &ScatteringData, w: &ConeWindow, x: f64, t: f64) -> Result<(C64, QParts)> {
    let p = expand(s, w, x, t)?;
    Ok((p.q_sol + p.correction, p))
}

/// Purely dispersive prediction (no solitons).
pub fn dispersive_profile(rho: &ReflectionCoefficient, x: f64, t: f64) -> Result<C64> {
    if t == 0.0 {
        return Err(AsymptoticsError::ZeroTime);
    }
    let e = rho.epsilon.sign();
    let xi0 = -x / (4.0 * t);
    let xi = if xi0.abs() < XI_NUDGE { XI_NUDGE } else { xi0 };
    let k = kappa(xi, rho)?;
    if k == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let m2 = e * if xi0.abs() < XI_NUDGE { kappa_over_xi(0.0, rho)? } else { k / xi };
    if m2 < 0.0 {
        return Err(AsymptoticsError::Domain { xi, reason: "εκ(ξ)/ξ < 0" });
    }
    let r = rho_value(rho, xi)?;
    let lg = gamma_complex(C64::new(0.0, k))?.arg();
    // α± = π/4 − arg(−εξρ̄) ± argΓ(iκ) ± (1/π)∫_{∓∞}^ξ log|ξ−λ| dL
    let (sgn, j) = if t > 0.0 { (1.0, log_kernel_integral(rho, xi, true)) } else { (-1.0, -log_kernel_integral(rho, xi, false)) };
    let alpha = FRAC_PI_4 - (-e * xi * r.conj()).arg() + sgn * lg + sgn * j / PI;
    let phase = alpha + x * x / (4.0 * t) - sgn * k * (8.0 * t).abs().ln();
    Ok((m2 / (2.0 * t.abs())).sqrt() * (I * phase).exp())
}

/// Which branch of the gauge asymptotics was used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeBranch {
    /// |ξ| ≥ M|t|^{−1/8}
    Outer,
    /// |ξ| < M|t|^{−1/8}: parabolic-cylinder factors F and G applied.
    Inner,
}

#[derive(Debug, Clone)]
pub struct UPrediction {
    pub u: C64,
    pub branch: GaugeBranch,
    pub alpha0: f64,
    /// F and G (1 on the outer branch).
    pub f: C64,
    pub g: C64,
    /// Parabolic-cylinder evaluations that came back with an accuracy warning.
    pub pcf_warnings: usize,
}

/// F(ξ, t, η) = [e^{p²/4} p^{−iηκ} D_{iηκ}(p)]^{−2} and G = p D_{iηκ−1}(p)/D_{iηκ}(p),
/// p = e^{iηπ/4}|8tξ²|^{1/2}. Returns (F, G, number of PCF accuracy warnings).
pub fn gauge_factors(xi: f64, t: f64, eta: Direction, rho: &ReflectionCoefficient) -> Result<(C64, C64, usize)> {
    let k = kappa(xi, rho)?;
    let nu = I * eta.sign() * k;
    let p = (I * eta.sign() * FRAC_PI_4).exp() * (8.0 * t * xi * xi).abs().sqrt();
    let d0 = parabolic_cylinder_d_diag(nu, p);
    let d1 = parabolic_cylinder_d_diag(nu - 1.0, p);
    let warns = [d0, d1].iter().filter(|d| d.accuracy_warning()).count();
    if warns > 0 {
        log::warn!("parabolic-cylinder evaluation near ν = {nu}, p = {p} flagged ({:e})", d0.discrepancy.max(d1.discrepancy));
    }
    if p.norm() == 0.0 {
        return Ok((1.0 / (d0.value * d0.value), C64::new(0.0, 0.0), warns));
    }
    let base = (p * p / 4.0).exp() * (-nu * p.ln()).exp() * d0.value;
    Ok((1.0 / (base * base), p * d1.value / d0.value, warns))
}

/// α₀(ξ, η) = −4 Σ_{Re λ_k ∈ I⁺∖I} arg λ_k − (1/π)∫_{I⁺} log(1 − ελ|ρ|²)/λ dλ,
/// with I⁺ = {η λ ≥ η ξ}.
pub fn gauge_phase(s: &ScatteringData, interval: (f64, f64), xi: f64, eta: Direction) -> f64 {
    let in_plus = |r: f64| eta.sign() * (r - xi) >= 0.0;
    let in_i = |r: f64| r >= interval.0 && r <= interval.1;
    let sum: f64 = s.discrete.pairs().iter().filter(|p| in_plus(p.lambda.re) && !in_i(p.lambda.re)).map(|p| p.lambda.arg()).sum();
    let e = s.epsilon.sign();
    let l = log_defect(&s.rho);
    let rho = &s.rho.grid;
    let int = half_line(&l, xi, eta == Direction::Past, |lam, v| {
        if lam == 0.0 {
            C64::new(-e * rho.interp(0.0).norm_sqr(), 0.0)
        } else {
            v / lam
        }
    });
    -4.0 * sum - int.re / PI
}

fn cone_sum_args(d: &DiscreteSpectrum, interval: (f64, f64), xi: f64, eta: Direction) -> f64 {
    d.pairs()
        .iter()
        .filter(|p| {
            let r = p.lambda.re;
            (r >= interval.0 && r <= interval.1) || eta.sign() * (r - xi) < 0.0
        })
        .map(|p| p.lambda.arg())
        .sum()
}

fn simpson(f: &[f64], h: f64) -> f64 {
    let n = f.len();
    let inner: f64 = f[1..n - 1].iter().enumerate().map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v }).sum();
    (f[0] + f[n - 1] + inner) * h / 3.0
}

/// Samples of q_sol(·, t; D) on [a, b], with b − a a whole number of steps.
fn sample(d: &DiscreteSpectrum, eps: Epsilon, a: f64, b: f64, t: f64) -> Result<ComplexGrid1D> {
    // even number of cells, for Simpson's rule
    let cells = (((b - a) / GAUGE_STEP).ceil() as usize).max(2);
    let n = cells + cells % 2 + 1;
    let xs: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
    Ok(ComplexGrid1D::new(a, b, q_nsoliton_on(d, eps, &xs, t)?)?)
}

/// Gauge-transformed prediction for u = q·exp(iε∫_{−∞}^x |q|²).
///
/// Both branches use the product form: the q-prediction times the expanded gauge factor
/// [1 + (iε/√(2|t|)){2Re(N₁₂ conj(A₁₂N₁₁)) + …}] exp(iε∫_{−∞}^x |q_sol(D_I)|²) e^{iα₀};
/// the inner branch adds the (1 − G) term and the overall factor F.
pub fn u_asymptotic(s: &ScatteringData, w: &ConeWindow, x: f64, t: f64, m: f64) -> Result<UPrediction> {
    let p = expand(s, w, x, t)?;
    let eps = s.epsilon;
    let e = eps.sign();
    let (lo, hi) = w.x_range(t);
    let (lo, hi) = (lo.min(x) - GAUGE_PAD, hi.max(x) + GAUGE_PAD);

    // ε∫_{−∞}^x |q_sol|² and ∫_x^∞ u_sol
    let left = sample(&p.reduced, eps, lo, x, t)?;
    let mass = simpson(&left.values.iter().map(|v| v.norm_sqr()).collect::<Vec<_>>(), left.h());
    let phase_x = e * mass;

    let a12 = p.amplitude.a12;
    let (n11, n12) = (p.nsol[0][0], p.nsol[0][1]);
    let mut bracket = C64::new(2.0 * (n12 * (a12 * n11).conj()).re, 0.0);

    let alpha0 = gauge_phase(s, w.interval(), p.xi, p.eta);
    let q_part = p.q_sol + p.correction;
    let scale = I * e / (2.0 * t.abs()).sqrt();

    let outer = p.xi.abs() >= m * t.abs().powf(-0.125);
    let (f, g, warns) = if outer {
        (C64::new(1.0, 0.0), C64::new(1.0, 0.0), 0)
    } else {
        let (f, g, warns) = gauge_factors(p.xi, t, p.eta, &s.rho)?;
        let right = sample(&p.reduced, eps, x, hi, t)?;
        let cum = right.with_values(right.values.iter().map(|v| C64::new(v.norm_sqr(), 0.0)).collect()).cumulative_trapezoid();
        let usol = right.with_values(right.values.iter().zip(&cum).map(|(q, c)| q * (I * (phase_x + e * c.re)).exp()).collect());
        let tail = usol.trapezoid();
        let rot = (4.0 * I * cone_sum_args(&s.discrete, w.interval(), p.xi, p.eta)).exp();
        bracket += a12.conj() * (1.0 - g) * rot * tail;
        (f, g, warns)
    };
    let u = f * q_part * (1.0 + scale * bracket) * (I * (phase_x + alpha0)).exp();
    Ok(UPrediction { u, branch: if outer { GaugeBranch::Outer } else { GaugeBranch::Inner }, alpha0, f, g, pcf_warnings: warns })
}
