use crate::error::{Result, SolitonError};
use crate::system::Direction;
use dnls_numerics::{ComplexGrid1D, C64, I};
use dnls_spectral::{log_defect, DiscreteSpectrum, Eigenpair, ReflectionCoefficient};
use std::f64::consts::PI;

/// ∫ f(s, g(s)) ds over the part of g's grid with s ≤ a (`below`) or s ≥ a,
/// trapezoid rule with a linearly interpolated partial end cell.
pub fn half_line(g: &ComplexGrid1D, a: f64, below: bool, f: impl Fn(f64, C64) -> C64) -> C64 {
    let n = g.n();
    let h = g.h();
    if n < 2 {
        return C64::new(0.0, 0.0);
    }
    let inside = |s: f64| if below { s <= a } else { s >= a };
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n - 1 {
        let (s0, s1) = (g.node(i), g.node(i + 1));
        let (v0, v1) = (g.values[i], g.values[i + 1]);
        match (inside(s0), inside(s1)) {
            (true, true) => acc += 0.5 * h * (f(s0, v0) + f(s1, v1)),
            (false, false) => {}
            (i0, _) => {
                let w = (a - s0) / h;
                let va = v0 + (v1 - v0) * w;
                acc += if i0 {
                    0.5 * (a - s0) * (f(s0, v0) + f(a, va))
                } else {
                    0.5 * (s1 - a) * (f(a, va) + f(s1, v1))
                };
            }
        }
    }
    acc
}

fn pair_factor(lk: C64, lj: C64) -> C64 {
    (lk - lj) / (lk - lj.conj())
}

/// Reduced discrete data for the solitons with Re λ in `interval`, as seen from the
/// cone (ξ, η): eigenvalues outside the window on the growing side contribute a
/// squared Blaschke factor, and the radiation on that side a Cauchy factor.
pub fn reduce_window(d: &DiscreteSpectrum, rho: &ReflectionCoefficient, interval: (f64, f64), xi: f64, eta: Direction) -> Result<DiscreteSpectrum> {
    let (lo, hi) = interval;
    let in_window = |l: C64| l.re >= lo && l.re <= hi;
    let growing = |l: C64| eta.sign() * (l.re - xi) <= 0.0;
    let log_l = log_defect(rho);
    let below = eta == Direction::Future;
    let radiation = !rho.is_zero();
    let mut out = Vec::new();
    for p in d.pairs().iter().filter(|p| in_window(p.lambda)) {
        let lk = p.lambda;
        let mut c = p.c;
        for q in d.pairs() {
            if !in_window(q.lambda) && growing(q.lambda) {
                c *= pair_factor(lk, q.lambda).powi(2);
            }
        }
        if radiation {
            let int = half_line(&log_l, xi, below, |s, l| l / (s - lk));
            c *= (I / PI * int).exp();
        }
        out.push(Eigenpair { lambda: lk, c });
    }
    Ok(DiscreteSpectrum::new(out)?)
}

/// Asymptotic centre and phase of soliton k as t → ±∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShifts {
    pub x_plus: f64,
    pub x_minus: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
}

impl PhaseShifts {
    pub fn total_shift(&self) -> f64 {
        self.x_plus - self.x_minus
    }
}

/// Reduce to (−π, π].
pub fn wrap_phase(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Centres and phases of the one-soliton that soliton k resembles for t → ±∞.
///
/// These are the x₀, α₀ of the reduced single-soliton data obtained from
/// [`reduce_window`] on a cone following Re λ_k.
pub fn phase_shifts(d: &DiscreteSpectrum, rho: &ReflectionCoefficient, k: usize) -> Result<PhaseShifts> {
    let n = d.len();
    if k >= n {
        return Err(SolitonError::Index { k, n });
    }
    let lams = d.lambdas();
    for i in 0..n {
        for j in i + 1..n {
            if lams[i].re == lams[j].re {
                return Err(SolitonError::Degenerate { j: i, k: j });
            }
        }
    }
    let lk = lams[k];
    let (eta_k, tau) = (lk.re, lk.im);
    let log_l = log_defect(rho);
    let base_x = (lk.norm() * d.pairs()[k].c.norm_sqr() / (4.0 * tau * tau)).ln() / (4.0 * tau);
    let base_a = (I * lk * d.pairs()[k].c).arg();

    let side = |sign: f64| {
        // solitons on the growing side of the cone: η(Re λ_j − η_k) < 0
        let mut x = base_x;
        let mut a = base_a;
        for (j, &lj) in lams.iter().enumerate() {
            if j != k && sign * (eta_k - lj.re) > 0.0 {
                let f = pair_factor(lk, lj);
                x += f.norm().ln() / tau;
                a += 2.0 * f.arg();
            }
        }
        if !rho.is_zero() {
            let below = sign > 0.0;
            let w = half_line(&log_l, eta_k, below, |s, l| l / ((s - eta_k).powi(2) + tau * tau)).re;
            let v = half_line(&log_l, eta_k, below, |s, l| (s - eta_k) * l / ((s - eta_k).powi(2) + tau * tau)).re;
            x -= w / (2.0 * PI);
            a += v / PI;
        }
        (x, wrap_phase(a))
    };
    let (x_plus, alpha_plus) = side(1.0);
    let (x_minus, alpha_minus) = side(-1.0);
    Ok(PhaseShifts { x_plus, x_minus, alpha_plus, alpha_minus })
}
