use dnls_numerics::{C64, I};
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

/// The equation on an n-periodic grid of spacing h, in Fourier variables.
///
/// Mode j has wavenumber k_j (standard FFT ordering); the linear flow is
/// q̂ ↦ e^{−ik²τ} q̂ and [`nonlinear`](Self::nonlinear) returns the transform of
/// −εq²q̄_x + (i/2)|q|⁴q with modes above the dealiasing cut removed.
pub struct SpectralSystem {
    pub eps: f64,
    pub k: Vec<f64>,
    /// false for removed modes
    pub keep: Vec<bool>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl SpectralSystem {
    pub fn new(n: usize, h: f64, eps: f64, dealias_fraction: f64) -> Self {
        let mut planner = FftPlanner::new();
        let l = n as f64 * h;
        let k: Vec<f64> = (0..n).map(|j| {
            let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
            2.0 * PI * m / l
        }).collect();
        let cut = dealias_fraction * PI / h;
        let keep = k.iter().map(|&kj| kj.abs() <= cut * (1.0 + 1e-12)).collect();
        Self { eps, k, keep, fwd: planner.plan_fft_forward(n), inv: planner.plan_fft_inverse(n) }
    }

    pub fn n(&self) -> usize {
        self.k.len()
    }

    /// Largest retained |k|.
    pub fn k_max(&self) -> f64 {
        self.k.iter().zip(&self.keep).filter(|p| *p.1).map(|p| p.0.abs()).fold(0.0, f64::max)
    }

    pub fn forward(&self, q: &[C64]) -> Vec<C64> {
        let mut v = q.to_vec();
        self.fwd.process(&mut v);
        v
    }

    pub fn inverse(&self, qh: &[C64]) -> Vec<C64> {
        let mut v = qh.to_vec();
        self.inv.process(&mut v);
        let s = 1.0 / v.len() as f64;
        v.iter_mut().for_each(|z| *z *= s);
        v
    }

    pub fn dealias(&self, qh: &mut [C64]) {
        for (z, &k) in qh.iter_mut().zip(&self.keep) {
            if !k {
                *z = C64::new(0.0, 0.0);
            }
        }
    }

    /// e^{−ik²τ} applied in place.
    pub fn propagate(&self, qh: &mut [C64], tau: f64) {
        for (z, &k) in qh.iter_mut().zip(&self.k) {
            *z *= C64::new(0.0, -k * k * tau).exp();
        }
    }

    pub fn propagated(&self, qh: &[C64], tau: f64) -> Vec<C64> {
        let mut v = qh.to_vec();
        self.propagate(&mut v, tau);
        v
    }

    pub fn nonlinear(&self, qh: &[C64]) -> Vec<C64> {
        let q = self.inverse(qh);
        let dq: Vec<C64> = qh.iter().zip(&self.k).map(|(z, &k)| I * k * z).collect();
        let qx = self.inverse(&dq);
        let nl: Vec<C64> = q.iter().zip(&qx).map(|(&u, &ux)| {
            let a = u.norm_sqr();
            -self.eps * u * u * ux.conj() + I * 0.5 * a * a * u
        }).collect();
        let mut out = self.forward(&nl);
        self.dealias(&mut out);
        out
    }
}
