//! Integrating-factor time steppers, registered by name.

use crate::spectral::SpectralSystem;
use dnls_numerics::{Registry, C64};
use std::sync::Arc;

/// One step of size `dt` for q̂_t = −ik²q̂ + N(q̂), linear part exact.
pub trait TimeStepper: Send + Sync {
    fn name(&self) -> &'static str;
    fn order(&self) -> u32;
    fn step(&self, sys: &SpectralSystem, qh: &[C64], dt: f64) -> Vec<C64>;
}

fn axpy(a: &[C64], s: f64, b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x + y * s).collect()
}

/// Lawson's integrating-factor RK4.
pub struct IfRk4;

impl TimeStepper for IfRk4 {
    fn name(&self) -> &'static str {
        "ifrk4"
    }
    fn order(&self) -> u32 {
        4
    }
    fn step(&self, sys: &SpectralSystem, qh: &[C64], dt: f64) -> Vec<C64> {
        let half = 0.5 * dt;
        let k1 = sys.nonlinear(qh);
        let eh = sys.propagated(&axpy(qh, half, &k1), half);
        let k2 = sys.nonlinear(&eh);
        let base = sys.propagated(qh, half);
        let k3 = sys.nonlinear(&axpy(&base, half, &k2));
        let k4 = sys.nonlinear(&sys.propagated(&axpy(&base, dt, &k3), half));
        // E(dt)[q̂ + dt k1/6] + E(dt/2)[dt(k2 + k3)/3] + dt k4/6
        let mut a = axpy(qh, dt / 6.0, &k1);
        let mid: Vec<C64> = k2.iter().zip(&k3).map(|(x, y)| (x + y) * (dt / 3.0)).collect();
        a = axpy(&sys.propagated(&a, half), 1.0, &mid);
        sys.propagate(&mut a, half);
        axpy(&a, dt / 6.0, &k4)
    }
}

/// Integrating-factor Heun (second order); mainly a convergence-order check.
pub struct IfRk2;

impl TimeStepper for IfRk2 {
    fn name(&self) -> &'static str {
        "ifrk2"
    }
    fn order(&self) -> u32 {
        2
    }
    fn step(&self, sys: &SpectralSystem, qh: &[C64], dt: f64) -> Vec<C64> {
        let k1 = sys.nonlinear(qh);
        let pred = sys.propagated(&axpy(qh, dt, &k1), dt);
        let k2 = sys.nonlinear(&pred);
        let a = sys.propagated(&axpy(qh, 0.5 * dt, &k1), dt);
        axpy(&a, 0.5 * dt, &k2)
    }
}

pub type StepperRegistry = Registry<dyn TimeStepper>;

/// "ifrk4" (default) and "ifrk2".
pub fn stepper_registry() -> StepperRegistry {
    let mut r: StepperRegistry = Registry::new();
    r.register("ifrk4", Arc::new(IfRk4));
    r.register("ifrk2", Arc::new(IfRk2));
    r
}
