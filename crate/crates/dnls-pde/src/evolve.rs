use crate::error::{PdeError, Result};
use crate::spectral::SpectralSystem;
use crate::stepper::{IfRk4, TimeStepper};
use dnls_numerics::C64;
use dnls_spectral::Potential;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionConfig {
    pub dt: f64,
    pub t_final: f64,
    /// retained fraction of the Nyquist wavenumber
    pub dealias_fraction: f64,
    /// record monitors every this many steps (the first and last step always)
    pub record_every: usize,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self { dt: 1e-4, t_final: 1.0, dealias_fraction: 2.0 / 3.0, record_every: 100 }
    }
}

impl EvolutionConfig {
    pub fn new(dt: f64, t_final: f64) -> Self {
        Self { dt, t_final, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(PdeError::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if !self.t_final.is_finite() {
            return Err(PdeError::Config("t_final must be finite".into()));
        }
        if !(self.dealias_fraction > 0.0 && self.dealias_fraction <= 1.0) {
            return Err(PdeError::Config(format!("dealias fraction must lie in (0, 1], got {}", self.dealias_fraction)));
        }
        if self.record_every == 0 {
            return Err(PdeError::Config("record_every must be ≥ 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonitorSample {
    pub t: f64,
    /// ∫|q|²
    pub mass: f64,
    pub max_abs: f64,
}

#[derive(Debug, Clone)]
pub struct Evolution {
    pub state: Potential,
    pub monitors: Vec<MonitorSample>,
    pub steps: usize,
    /// step actually used (t_final / steps)
    pub dt: f64,
    /// dt·k_max² of the retained modes
    pub stiffness: f64,
}

impl Evolution {
    /// max relative deviation of ∫|q|² from its initial value.
    pub fn mass_drift(&self) -> f64 {
        let m0 = self.monitors[0].mass;
        if m0 == 0.0 {
            return 0.0;
        }
        self.monitors.iter().map(|s| (s.mass - m0).abs() / m0).fold(0.0, f64::max)
    }
}

/// Periodic rectangle-rule mass h·Σ|q|² (spectrally accurate for decaying data).
pub fn mass(values: &[C64], h: f64) -> f64 {
    h * values.iter().map(|v| v.norm_sqr()).sum::<f64>()
}

const BLOW_UP: f64 = 1e6;

/// Solver configuration.
#[derive(Clone)]
pub struct Pde {
    pub stepper: Arc<dyn TimeStepper>,
    /// largest accepted edge/max ratio of the initial data
    pub edge_tol: f64,
}

impl Default for Pde {
    fn default() -> Self {
        Self { stepper: Arc::new(IfRk4), edge_tol: 1e-6 }
    }
}

impl std::fmt::Debug for Pde {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pde").field("stepper", &self.stepper.name()).field("edge_tol", &self.edge_tol).finish()
    }
}

impl Pde {
    pub fn with_stepper(stepper: Arc<dyn TimeStepper>) -> Self {
        Self { stepper, ..Self::default() }
    }

    /// Evolves q0 to `cfg.t_final` (negative times run backwards).
    ///
    /// The grid's n nodes are treated as one period of length n·h.
    pub fn evolve(&self, q0: &Potential, cfg: &EvolutionConfig) -> Result<Evolution> {
        cfg.validate()?;
        let ratio = q0.decay_ratio();
        if ratio > self.edge_tol {
            return Err(PdeError::NotPeriodic { ratio });
        }
        let g = &q0.grid;
        let h = g.h();
        let sys = SpectralSystem::new(g.n(), h, q0.epsilon.sign(), cfg.dealias_fraction);
        let steps = (cfg.t_final.abs() / cfg.dt - 1e-9).ceil().max(0.0) as usize;
        let dt = if steps == 0 { 0.0 } else { cfg.t_final / steps as f64 };
        let stiffness = dt.abs() * sys.k_max().powi(2);
        if stiffness > 0.5 {
            log::warn!("dt·k_max² = {stiffness:.3} > 0.5; the nonlinear stages may be under-resolved");
        }

        let sample = |t: f64, q: &[C64]| -> Result<MonitorSample> {
            let max_abs = q.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if !(max_abs <= BLOW_UP) {
                return Err(PdeError::BlowUp { t, max: max_abs });
            }
            Ok(MonitorSample { t, mass: mass(q, h), max_abs })
        };

        let mut monitors = vec![sample(0.0, &g.values)?];
        let mut qh = sys.forward(&g.values);
        sys.dealias(&mut qh);
        let mut q = g.values.clone();
        for s in 1..=steps {
            qh = self.stepper.step(&sys, &qh, dt);
            let t = s as f64 * dt;
            let last = s == steps;
            let check = s % cfg.record_every == 0 || last;
            if check {
                q = sys.inverse(&qh);
                monitors.push(sample(t, &q)?);
            } else if qh.iter().any(|z| !z.is_finite()) {
                return Err(PdeError::BlowUp { t, max: f64::INFINITY });
            }
        }
        let state = Potential { grid: g.with_values(q), epsilon: q0.epsilon };
        Ok(Evolution { state, monitors, steps, dt, stiffness })
    }
}

/// [`Pde::evolve`] with the default (IF-RK4) stepper.
pub fn evolve_pde(q0: &Potential, cfg: &EvolutionConfig) -> Result<Evolution> {
    Pde::default().evolve(q0, cfg)
}
