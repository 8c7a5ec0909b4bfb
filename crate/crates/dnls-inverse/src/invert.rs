use crate::bc::{solve_row, BealsCoifmanSolution, Normalization};
use crate::error::Result;
use crate::left::left_data;
use crate::solver::{solver_registry, LinearSolver};
use dnls_numerics::{CauchyPlan, ComplexGrid1D, Grid1D, C64};
use dnls_spectral::{flow, Potential, ScatteringData};
use rayon::prelude::*;
use std::sync::Arc;

/// Inverse-map configuration.
#[derive(Clone)]
pub struct Inverse {
    pub solver: Arc<dyn LinearSolver>,
    /// Accepted sup-norm residual of the discretized equations.
    pub residual_tol: f64,
    /// |x| beyond which the oscillatory quadrature is not trusted (warning only).
    pub trusted_x: f64,
    /// Half-width of the window where both normalizations are evaluated and compared.
    pub overlap: f64,
    pub overlap_warn: f64,
}

impl Default for Inverse {
    fn default() -> Self {
        Self {
            solver: solver_registry().resolve(None).expect("default solver"),
            residual_tol: 1e-6,
            trusted_x: 30.0,
            overlap: 2.0,
            overlap_warn: 1e-3,
        }
    }
}

impl std::fmt::Debug for Inverse {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Inverse").field("solver", &self.solver.name()).field("residual_tol", &self.residual_tol).finish()
    }
}

/// Result of [`Inverse::invert`].
#[derive(Debug, Clone)]
pub struct Inversion {
    pub potential: Potential,
    /// sup |q_right − q_left| over grid nodes in the overlap window (None if no node falls there).
    pub overlap_mismatch: Option<f64>,
    pub max_residual: f64,
    pub max_iterations: usize,
}

impl Inverse {
    pub fn with_solver(solver: Arc<dyn LinearSolver>) -> Self {
        Self { solver, ..Self::default() }
    }

    fn check_x(&self, x: f64) {
        if x.abs() > self.trusted_x {
            log::warn!("reconstruction at x = {x} is outside the trusted window |x| ≤ {}; oscillatory quadrature may be inaccurate", self.trusted_x);
        }
    }

    pub fn solve_right(&self, s: &ScatteringData, x: f64) -> Result<BealsCoifmanSolution> {
        self.check_x(x);
        let plan = CauchyPlan::new(s.rho.grid.n());
        solve_row(&plan, s, x, Normalization::Right, self.solver.as_ref(), self.residual_tol)
    }

    /// `left` must come from [`left_data`].
    pub fn solve_left(&self, left: &ScatteringData, x: f64) -> Result<BealsCoifmanSolution> {
        self.check_x(x);
        let plan = CauchyPlan::new(left.rho.grid.n());
        solve_row(&plan, left, x, Normalization::Left, self.solver.as_ref(), self.residual_tol)
    }

    pub fn reconstruct_right(&self, s: &ScatteringData, x: f64) -> Result<C64> {
        Ok(self.solve_right(s, x)?.q)
    }

    pub fn reconstruct_left(&self, s: &ScatteringData, x: f64) -> Result<C64> {
        Ok(self.solve_left(&left_data(s)?, x)?.q)
    }

    /// q(·, t) on `x_grid`: right normalization for x ≥ 0, left for x < 0.
    pub fn invert(&self, s: &ScatteringData, t: f64, x_grid: Grid1D) -> Result<Inversion> {
        let st = flow(s, t);
        let left = left_data(&st)?;
        let plan = CauchyPlan::new(st.rho.grid.n());
        let xs = x_grid.nodes();
        xs.iter().for_each(|&x| self.check_x(x));
        let solver = self.solver.as_ref();
        let tol = self.residual_tol;
        let sols: Vec<(C64, f64, usize, Option<f64>)> = xs
            .par_iter()
            .map(|&x| {
                let right = |x| solve_row(&plan, &st, x, Normalization::Right, solver, tol);
                let lft = |x| solve_row(&plan, &left, x, Normalization::Left, solver, tol);
                let main = if x >= 0.0 { right(x)? } else { lft(x)? };
                let mismatch = if x.abs() <= self.overlap {
                    let other = if x >= 0.0 { lft(x)? } else { right(x)? };
                    Some((other.q - main.q).norm())
                } else {
                    None
                };
                Ok((main.q, main.residual, main.iterations, mismatch))
            })
            .collect::<Result<_>>()?;
        let mut values = Vec::with_capacity(xs.len());
        let (mut res, mut iters, mut mism): (f64, usize, Option<f64>) = (0.0, 0, None);
        for (q, r, it, m) in sols {
            values.push(q);
            res = res.max(r);
            iters = iters.max(it);
            if let Some(m) = m {
                mism = Some(mism.map_or(m, |a: f64| a.max(m)));
            }
        }
        if let Some(m) = mism {
            if m > self.overlap_warn {
                log::warn!("left/right reconstructions disagree by {m:.2e} on the overlap window");
            }
        }
        let grid = ComplexGrid1D::new(x_grid.min, x_grid.max, values)?;
        // a reconstruction window need not reach the decay region, so skip the edge check
        Ok(Inversion { potential: Potential { grid, epsilon: s.epsilon }, overlap_mismatch: mism, max_residual: res, max_iterations: iters })
    }
}
