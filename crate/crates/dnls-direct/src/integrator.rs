//! One-step propagators for the linear system Ψ' = U(x)Ψ, registered by name.

use crate::mat2::M2;
use dnls_numerics::{Registry, C64};
use std::sync::Arc;

/// Approximates the propagator Φ(x+h, x) of Ψ' = U(s)Ψ over a single (sub)step
/// from samples of U at `x + c·h` for the fractions `c` in [`nodes`](Self::nodes).
///
/// The node set must be symmetric under c ↦ 1 − c so that the same cached
/// samples serve left- and right-going sweeps.
pub trait JostIntegrator: Send + Sync {
    fn name(&self) -> &'static str;
    fn nodes(&self) -> &'static [f64];
    fn propagator(&self, a: &[M2], h: f64) -> M2;
}

/// Fourth-order Magnus expansion with two Gauss points; preserves det = 1 exactly.
pub struct Magnus4;

impl JostIntegrator for Magnus4 {
    fn name(&self) -> &'static str {
        "magnus4"
    }
    fn nodes(&self) -> &'static [f64] {
        const D: f64 = 0.288_675_134_594_812_9; // √3/6
        &[0.5 - D, 0.5 + D]
    }
    fn propagator(&self, a: &[M2], h: f64) -> M2 {
        let (a1, a2) = (a[0], a[1]);
        let omega = (a1 + a2).scale(C64::new(0.5 * h, 0.0)) + M2::commutator(&a2, &a1).scale(C64::new(3f64.sqrt() * h * h / 12.0, 0.0));
        omega.expm()
    }
}

/// Classical Runge–Kutta applied to the matrix equation.
pub struct Rk4;

impl JostIntegrator for Rk4 {
    fn name(&self) -> &'static str {
        "rk4"
    }
    fn nodes(&self) -> &'static [f64] {
        &[0.0, 0.5, 1.0]
    }
    fn propagator(&self, a: &[M2], h: f64) -> M2 {
        let hc = |s: f64| C64::new(s, 0.0);
        let (u0, um, u1) = (a[0], a[1], a[2]);
        let k1 = u0;
        let k2 = um * (M2::IDENTITY + k1.scale(hc(0.5 * h)));
        let k3 = um * (M2::IDENTITY + k2.scale(hc(0.5 * h)));
        let k4 = u1 * (M2::IDENTITY + k3.scale(hc(h)));
        M2::IDENTITY + (k1 + k2.scale(hc(2.0)) + k3.scale(hc(2.0)) + k4).scale(hc(h / 6.0))
    }
}

pub type IntegratorRegistry = Registry<dyn JostIntegrator>;

/// "magnus4" (default) and "rk4".
pub fn integrator_registry() -> IntegratorRegistry {
    let mut r: IntegratorRegistry = Registry::new();
    r.register("magnus4", Arc::new(Magnus4));
    r.register("rk4", Arc::new(Rk4));
    r
}
