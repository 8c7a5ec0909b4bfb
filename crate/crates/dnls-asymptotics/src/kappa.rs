use crate::error::{AsymptoticsError, Result};
use dnls_numerics::{cauchy_integral, ComplexGrid1D, NumericsError, C64, I};
use dnls_solitons::Direction;
use dnls_spectral::{log_defect, ReflectionCoefficient};
use std::f64::consts::PI;

fn rho_at(rho: &ReflectionCoefficient, xi: f64) -> Result<C64> {
    let g = &rho.grid;
    if xi < g.x_min || xi > g.x_max {
        return Err(AsymptoticsError::OutsideGrid { xi, min: g.x_min, max: g.x_max });
    }
    Ok(g.interp(xi))
}

/// ρ(ξ) by cubic interpolation on ρ's grid.
pub fn rho_value(rho: &ReflectionCoefficient, xi: f64) -> Result<C64> {
    rho_at(rho, xi)
}

/// κ(ξ) = −(1/2π) log(1 − εξ|ρ(ξ)|²).
pub fn kappa(xi: f64, rho: &ReflectionCoefficient) -> Result<f64> {
    let r = rho_at(rho, xi)?;
    let arg = -rho.epsilon.sign() * xi * r.norm_sqr();
    if !(arg > -1.0) {
        return Err(AsymptoticsError::Constraint { xi, value: 1.0 + arg });
    }
    Ok(-arg.ln_1p() / (2.0 * PI))
}

/// κ(ξ)/ξ, continuous through ξ = 0 where it tends to ε|ρ(0)|²/2π.
pub fn kappa_over_xi(xi: f64, rho: &ReflectionCoefficient) -> Result<f64> {
    if xi.abs() < 1e-10 {
        let r = rho_at(rho, xi)?;
        return Ok(rho.epsilon.sign() * r.norm_sqr() / (2.0 * PI));
    }
    Ok(kappa(xi, rho)? / xi)
}

/// κ on the ρ grid.
pub(crate) fn kappa_grid(rho: &ReflectionCoefficient) -> ComplexGrid1D {
    log_defect(rho).map(|_, l| -l / (2.0 * PI))
}

/// The integration half-line {η λ ≤ η ξ} clipped to the grid, as (lo, hi).
pub(crate) fn minus_half_line(g: &ComplexGrid1D, xi: f64, eta: Direction) -> (f64, f64) {
    match eta {
        Direction::Future => (g.x_min, xi.clamp(g.x_min, g.x_max)),
        Direction::Past => (xi.clamp(g.x_min, g.x_max), g.x_max),
    }
}

const MAX_SUB: usize = 1 << 20;

/// ∫_lo^hi f(z)/(z − λ) dz for f sampled on `g`.
///
/// `f` is resampled on a sub-grid fine enough for the near-line Cauchy rule at λ;
/// real λ outside the segment use endpoint subtraction.
pub(crate) fn segment_cauchy(g: &ComplexGrid1D, lo: f64, hi: f64, lam: C64) -> Result<C64> {
    if hi - lo <= 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let h0 = g.h();
    let d = lam.im.abs();
    let outside = lam.re < lo || lam.re > hi;
    let h = if outside && d < h0 { h0 } else { h0.min(5.0 * d.max(1e-300)) };
    let n = ((hi - lo) / h).ceil() as usize + 1;
    if n > MAX_SUB {
        return Err(NumericsError::ContourProximity { dist: d, min: 10.0 * (hi - lo) / MAX_SUB as f64 }.into());
    }
    let n = n.max(9);
    let step = (hi - lo) / (n - 1) as f64;
    let sub = ComplexGrid1D::new(lo, hi, (0..n).map(|i| g.interp(lo + i as f64 * step)).collect())?;
    if outside && d < step / 10.0 {
        // nearest endpoint value subtracted and integrated in closed form
        let e = if lam.re < lo { lo } else { hi };
        let fe = sub.interp(e);
        let mut acc = C64::new(0.0, 0.0);
        for (j, &v) in sub.values.iter().enumerate() {
            let w = if j == 0 || j + 1 == n { 0.5 } else { 1.0 };
            let z = lo + j as f64 * step;
            if (z - lam.re).abs() > 0.0 {
                acc += (v - fe) * w / (z - lam);
            }
        }
        acc *= step;
        return Ok(acc + fe * ((C64::new(hi, 0.0) - lam) / (C64::new(lo, 0.0) - lam)).ln());
    }
    Ok(cauchy_integral(&sub, lam)? * C64::new(0.0, 2.0 * PI))
}

/// δ(λ) = exp(i ∫_{I⁻} κ(z)/(z − λ) dz), I⁻ = {η Re z ≤ η ξ}.
pub fn delta_fn(lam: C64, xi: f64, eta: Direction, rho: &ReflectionCoefficient) -> Result<C64> {
    if rho.is_zero() {
        return Ok(C64::new(1.0, 0.0));
    }
    let k = kappa_grid(rho);
    let (lo, hi) = minus_half_line(&k, xi, eta);
    Ok((I * segment_cauchy(&k, lo, hi, lam)?).exp())
}

/// Fourth-order centred differences (second order at the two outer nodes on each side).
pub(crate) fn derivative4(g: &ComplexGrid1D) -> Vec<C64> {
    let v = &g.values;
    let n = v.len();
    let h = g.h();
    let mut d = vec![C64::new(0.0, 0.0); n];
    if n < 5 {
        return g.derivative().values;
    }
    for i in 0..n {
        d[i] = if i >= 2 && i + 2 < n {
            (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h)
        } else if i == 0 {
            (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
        } else if i + 1 == n {
            (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h)
        } else {
            (v[i + 1] - v[i - 1]) / (2.0 * h)
        };
    }
    d
}

/// ∫ log|u| (c0 + c1 u) du antiderivative.
fn log_prim(u: f64, c0: f64, c1: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    let l = u.abs().ln();
    c0 * (u * l - u) + c1 * (u * u * 0.5 * l - u * u * 0.25)
}

/// ∫ log|ξ − λ| L'(λ) dλ over the half-line λ ≤ ξ (`below`) or λ ≥ ξ, L = log(1 − ελ|ρ|²).
///
/// L' is taken from fourth-order differences and interpolated linearly on each
/// cell; the log weight is integrated exactly, the cell containing ξ is split at ξ.
pub fn log_kernel_integral(rho: &ReflectionCoefficient, xi: f64, below: bool) -> f64 {
    let l = log_defect(rho);
    let dl = derivative4(&l);
    let g = l.grid();
    let mut acc = 0.0;
    for i in 0..g.n - 1 {
        let (s0, s1) = (g.node(i), g.node(i + 1));
        let (mut a, mut b) = (s0, s1);
        if below {
            if a >= xi {
                continue;
            }
            b = b.min(xi);
        } else {
            if b <= xi {
                continue;
            }
            a = a.max(xi);
        }
        // L'(λ) ≈ d0 + (d1 − d0)(λ − s0)/h, rewritten in u = λ − ξ
        let (d0, d1) = (dl[i].re, dl[i + 1].re);
        let c1 = (d1 - d0) / (s1 - s0);
        let c0 = d0 + c1 * (xi - s0);
        acc += log_prim(b - xi, c0, c1) - log_prim(a - xi, c0, c1);
    }
    acc
}
