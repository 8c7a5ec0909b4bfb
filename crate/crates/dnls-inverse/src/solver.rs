//! Solvers for affine fixed-point problems u = f + K u, registered by name.

use crate::error::{InverseError, Result};
use dnls_numerics::{Registry, C64};
use std::sync::Arc;

/// A linear map K together with the constant term f of u = f + K u.
pub trait AffineProblem: Sync {
    fn constant(&self) -> &[C64];
    /// out = K u
    fn apply(&self, u: &[C64], out: &mut [C64]) -> Result<()>;

    fn dim(&self) -> usize {
        self.constant().len()
    }

    /// sup |u − f − K u|
    fn residual(&self, u: &[C64]) -> Result<f64> {
        let mut ku = vec![C64::new(0.0, 0.0); u.len()];
        self.apply(u, &mut ku)?;
        Ok(u.iter().zip(&ku).zip(self.constant()).map(|((a, b), f)| (a - b - f).norm()).fold(0.0, f64::max))
    }
}

#[derive(Debug, Clone)]
pub struct Solved {
    pub u: Vec<C64>,
    pub iterations: usize,
    pub solver: &'static str,
}

pub trait LinearSolver: Send + Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, p: &dyn AffineProblem) -> Result<Solved>;
}

pub type SolverRegistry = Registry<dyn LinearSolver>;

/// "auto" (default), "fixed-point", "gmres".
pub fn solver_registry() -> SolverRegistry {
    let mut r = SolverRegistry::new();
    r.register("auto", Arc::new(Auto::default()));
    r.register("fixed-point", Arc::new(FixedPoint::default()));
    r.register("gmres", Arc::new(Gmres::default()));
    r
}

fn sup(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Plain iteration u ← f + K u.
#[derive(Debug, Clone)]
pub struct FixedPoint {
    pub tol: f64,
    pub max_iter: usize,
    /// Give up early once the observed contraction factor exceeds this.
    pub give_up_ratio: f64,
}

impl Default for FixedPoint {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 500, give_up_ratio: 1.0 }
    }
}

impl LinearSolver for FixedPoint {
    fn name(&self) -> &'static str {
        "fixed-point"
    }

    fn solve(&self, p: &dyn AffineProblem) -> Result<Solved> {
        let f = p.constant();
        let mut u = f.to_vec();
        let mut ku = vec![C64::new(0.0, 0.0); u.len()];
        let mut history = Vec::new();
        for it in 1..=self.max_iter {
            p.apply(&u, &mut ku)?;
            let mut diff: f64 = 0.0;
            for ((ui, ki), fi) in u.iter_mut().zip(&ku).zip(f) {
                let new = fi + ki;
                diff = diff.max((new - *ui).norm());
                *ui = new;
            }
            let scale = 1.0 + sup(&u);
            if !diff.is_finite() {
                break;
            }
            if diff <= self.tol * scale {
                return Ok(Solved { u, iterations: it, solver: self.name() });
            }
            history.push(diff);
            if history.len() > 8 {
                let k = history.len();
                let ratio = (history[k - 1] / history[k - 6]).powf(0.2);
                if ratio >= self.give_up_ratio {
                    return Err(InverseError::NoConvergence { solver: self.name(), iterations: it, residual: diff });
                }
            }
        }
        Err(InverseError::NoConvergence { solver: self.name(), iterations: self.max_iter, residual: history.last().copied().unwrap_or(f64::NAN) })
    }
}

/// Restarted GMRES on (I − K) u = f.
#[derive(Debug, Clone)]
pub struct Gmres {
    pub restart: usize,
    pub max_restarts: usize,
    /// Relative to ‖f‖₂.
    pub tol: f64,
}

impl Default for Gmres {
    fn default() -> Self {
        Self { restart: 60, max_restarts: 40, tol: 1e-12 }
    }
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm2(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

impl Gmres {
    fn op(p: &dyn AffineProblem, u: &[C64], out: &mut [C64]) -> Result<()> {
        p.apply(u, out)?;
        for (o, x) in out.iter_mut().zip(u) {
            *o = x - *o;
        }
        Ok(())
    }
}

impl LinearSolver for Gmres {
    fn name(&self) -> &'static str {
        "gmres"
    }

    fn solve(&self, p: &dyn AffineProblem) -> Result<Solved> {
        let f = p.constant();
        let n = f.len();
        let zero = C64::new(0.0, 0.0);
        let bnorm = norm2(f);
        let mut u = f.to_vec();
        if bnorm == 0.0 {
            return Ok(Solved { u, iterations: 0, solver: self.name() });
        }
        let m = self.restart.min(n).max(1);
        let mut total = 0;
        let mut w = vec![zero; n];
        let mut last = f64::NAN;
        for _ in 0..self.max_restarts {
            Self::op(p, &u, &mut w)?;
            let r: Vec<C64> = f.iter().zip(&w).map(|(a, b)| a - b).collect();
            let beta = norm2(&r);
            last = beta / bnorm;
            if last <= self.tol {
                return Ok(Solved { u, iterations: total, solver: self.name() });
            }
            let mut v: Vec<Vec<C64>> = vec![r.iter().map(|x| x / beta).collect()];
            let mut h = vec![vec![zero; m]; m + 1];
            let (mut cs, mut sn) = (vec![zero; m], vec![zero; m]);
            let mut g = vec![zero; m + 1];
            g[0] = C64::new(beta, 0.0);
            let mut k_used = 0;
            for k in 0..m {
                total += 1;
                Self::op(p, &v[k], &mut w)?;
                for (j, vj) in v.iter().enumerate() {
                    let hjk = dot(vj, &w);
                    h[j][k] = hjk;
                    for (wi, vi) in w.iter_mut().zip(vj) {
                        *wi -= hjk * vi;
                    }
                }
                let hn = norm2(&w);
                h[k + 1][k] = C64::new(hn, 0.0);
                // apply previous rotations
                for j in 0..k {
                    let t = cs[j].conj() * h[j][k] + sn[j].conj() * h[j + 1][k];
                    h[j + 1][k] = -sn[j] * h[j][k] + cs[j] * h[j + 1][k];
                    h[j][k] = t;
                }
                let (a, b) = (h[k][k], h[k + 1][k]);
                let rr = (a.norm_sqr() + b.norm_sqr()).sqrt();
                let (c, s) = if rr == 0.0 { (C64::new(1.0, 0.0), zero) } else { (a / rr, b / rr) };
                cs[k] = c;
                sn[k] = s;
                h[k][k] = C64::new(rr, 0.0);
                h[k + 1][k] = zero;
                g[k + 1] = -s * g[k];
                g[k] = c.conj() * g[k];
                k_used = k + 1;
                last = g[k + 1].norm() / bnorm;
                if last <= self.tol || hn == 0.0 {
                    break;
                }
                v.push(w.iter().map(|x| x / hn).collect());
            }
            // back substitution
            let mut y = vec![zero; k_used];
            for i in (0..k_used).rev() {
                let mut s = g[i];
                for j in i + 1..k_used {
                    s -= h[i][j] * y[j];
                }
                y[i] = s / h[i][i];
            }
            for (j, yj) in y.iter().enumerate() {
                for (ui, vi) in u.iter_mut().zip(&v[j]) {
                    *ui += yj * vi;
                }
            }
            if !last.is_finite() {
                break;
            }
        }
        Self::op(p, &u, &mut w)?;
        let res = norm2(&f.iter().zip(&w).map(|(a, b)| a - b).collect::<Vec<_>>()) / bnorm;
        if res <= self.tol * 10.0 {
            return Ok(Solved { u, iterations: total, solver: self.name() });
        }
        Err(InverseError::NoConvergence { solver: self.name(), iterations: total, residual: res.max(last) })
    }
}

/// Fixed-point iteration while it contracts well, restarted GMRES otherwise.
#[derive(Debug, Clone)]
pub struct Auto {
    pub fixed: FixedPoint,
    pub krylov: Gmres,
}

impl Default for Auto {
    fn default() -> Self {
        Self { fixed: FixedPoint { give_up_ratio: 0.7, ..FixedPoint::default() }, krylov: Gmres::default() }
    }
}

impl LinearSolver for Auto {
    fn name(&self) -> &'static str {
        "auto"
    }

    fn solve(&self, p: &dyn AffineProblem) -> Result<Solved> {
        match self.fixed.solve(p) {
            Ok(s) => Ok(s),
            Err(InverseError::NoConvergence { iterations, residual, .. }) => {
                log::debug!("fixed-point stalled after {iterations} iterations ({residual:e}); switching to GMRES");
                let mut s = self.krylov.solve(p)?;
                s.iterations += iterations;
                Ok(s)
            }
            Err(e) => Err(e),
        }
    }
}
