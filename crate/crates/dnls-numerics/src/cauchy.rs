//! Cauchy projectors and Cauchy integrals for functions sampled on the real line.
//!
//! Convention: C(f)(z) = (1/2πi) ∫ f(s)/(s − z) ds and
//! C^± f = ±½ f + (i/2) H f with H f(λ) = (1/π) p.v.∫ f(s)/(λ − s) ds.
//! The discrete H is the band-limited (sinc) Hilbert transform,
//! (H f)_m = Σ_{k odd} f_{m−k} · 2/(πk), applied by zero-padded FFT.

use crate::error::{NumericsError, Result};
use crate::grid::ComplexGrid1D;
use crate::C64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// Precomputed FFT plan and kernel spectrum for a fixed sample count.
/// Reuse it across repeated projections on grids of the same length.
#[derive(Clone)]
pub struct CauchyPlan {
    n: usize,
    len: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    kernel_hat: Vec<C64>,
}

impl std::fmt::Debug for CauchyPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CauchyPlan").field("n", &self.n).field("len", &self.len).finish()
    }
}

impl CauchyPlan {
    pub fn new(n: usize) -> Self {
        let len = (2 * n).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(len);
        let inv = planner.plan_fft_inverse(len);
        let mut kernel_hat = vec![C64::new(0.0, 0.0); len];
        for k in (1..n).step_by(2) {
            let w = 2.0 / (PI * k as f64);
            kernel_hat[k] = C64::new(w, 0.0);
            kernel_hat[len - k] = C64::new(-w, 0.0);
        }
        fwd.process(&mut kernel_hat);
        Self { n, len, fwd, inv, kernel_hat }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Discrete Hilbert transform of the samples.
    pub fn hilbert(&self, f: &[C64]) -> Vec<C64> {
        assert_eq!(f.len(), self.n, "plan built for {} samples, got {}", self.n, f.len());
        let mut buf = vec![C64::new(0.0, 0.0); self.len];
        buf[..self.n].copy_from_slice(f);
        self.fwd.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel_hat) {
            *b *= k;
        }
        self.inv.process(&mut buf);
        let scale = 1.0 / self.len as f64;
        buf.truncate(self.n);
        buf.iter_mut().for_each(|b| *b *= scale);
        buf
    }

    /// C^± applied to raw samples.
    pub fn project_values(&self, f: &[C64], side: Side) -> Vec<C64> {
        let hf = self.hilbert(f);
        let s = 0.5 * side.sign();
        f.iter().zip(hf).map(|(&v, h)| v * s + C64::new(0.0, 0.5) * h).collect()
    }

    pub fn project(&self, f: &ComplexGrid1D, side: Side) -> ComplexGrid1D {
        f.with_values(self.project_values(&f.values, side))
    }

    /// Both projections from one transform: (C⁺f, C⁻f).
    pub fn project_both(&self, f: &ComplexGrid1D) -> (ComplexGrid1D, ComplexGrid1D) {
        let hf = self.hilbert(&f.values);
        let ih: Vec<C64> = hf.into_iter().map(|h| C64::new(0.0, 0.5) * h).collect();
        let plus = f.values.iter().zip(&ih).map(|(&v, &h)| v * 0.5 + h).collect();
        let minus = f.values.iter().zip(&ih).map(|(&v, &h)| -v * 0.5 + h).collect();
        (f.with_values(plus), f.with_values(minus))
    }
}

/// C^± f on the same grid. Builds a one-off plan; hot loops should hold a [`CauchyPlan`].
pub fn cauchy_projector(f: &ComplexGrid1D, side: Side) -> ComplexGrid1D {
    CauchyPlan::new(f.n()).project(f, side)
}

fn check_distance(f: &ComplexGrid1D, z: C64) -> Result<()> {
    let min = f.h() / 10.0;
    if !(z.im.abs() >= min) {
        return Err(NumericsError::ContourProximity { dist: z.im.abs(), min });
    }
    Ok(())
}

/// Slope of the sampled function at `x` (cubic-interpolant derivative).
fn local_slope(f: &ComplexGrid1D, x: f64) -> C64 {
    let d = f.h() * 0.5;
    (f.interp(x + d) - f.interp(x - d)) / (2.0 * d)
}

/// (1/2πi) ∫ f(s)/(s − z) ds by trapezoid quadrature.
///
/// Within a few grid spacings of the contour the local linear part of `f`
/// is subtracted and integrated exactly, which keeps the rule usable down to
/// |Im z| = h/10.
pub fn cauchy_integral(f: &ComplexGrid1D, z: C64) -> Result<C64> {
    check_distance(f, z)?;
    let h = f.h();
    let (a, b) = (f.x_min, f.x_max);
    let near = z.im.abs() < 5.0 * h && z.re >= a && z.re <= b;
    let n = f.n();
    let g = f.grid();
    let mut acc = C64::new(0.0, 0.0);
    if !near {
        for (j, &v) in f.values.iter().enumerate() {
            let w = if j == 0 || j + 1 == n { 0.5 } else { 1.0 };
            acc += v * w / (g.node(j) - z);
        }
        acc *= h;
    } else {
        let x0 = z.re;
        let f0 = f.interp(x0);
        let f1 = local_slope(f, x0);
        for (j, &v) in f.values.iter().enumerate() {
            let s = g.node(j);
            let w = if j == 0 || j + 1 == n { 0.5 } else { 1.0 };
            acc += (v - f0 - f1 * (s - x0)) * w / (s - z);
        }
        acc *= h;
        let log_ratio = (C64::new(b, 0.0) - z).ln() - (C64::new(a, 0.0) - z).ln();
        // ∫ (s − x0)/(s − z) ds = (b − a) + (z − x0) log((b − z)/(a − z))
        acc += f0 * log_ratio + f1 * ((b - a) + (z - x0) * log_ratio);
    }
    Ok(acc / C64::new(0.0, 2.0 * PI))
}

/// d/dz of the Cauchy integral: (1/2πi) ∫ f(s)/(s − z)² ds.
pub fn cauchy_integral_deriv(f: &ComplexGrid1D, z: C64) -> Result<C64> {
    check_distance(f, z)?;
    let h = f.h();
    let g = f.grid();
    let n = f.n();
    let mut acc = C64::new(0.0, 0.0);
    for (j, &v) in f.values.iter().enumerate() {
        let w = if j == 0 || j + 1 == n { 0.5 } else { 1.0 };
        let d = g.node(j) - z;
        acc += v * w / (d * d);
    }
    Ok(acc * h / C64::new(0.0, 2.0 * PI))
}
