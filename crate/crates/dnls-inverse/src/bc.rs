//! The row-vector singular integral equations with pole conditions.
//!
//! Unknowns: the two components ν₁, ν₂ on the λ-grid, the values U_j = ν₂(z¹_j)
//! at the poles of ν₁ and V_j = ν₁(z²_j) at the poles of ν₂:
//!
//!   ν₁ = 1 + C^{s₁}(w₂₁ ν₂) + Σ a_k U_k/(λ − z¹_k)
//!   ν₂ =     C^{s₂}(w₁₂ ν₁) + Σ b_k V_k/(λ − z²_k)
//!   U_j =    C(w₁₂ ν₁)(z¹_j) + Σ b_k V_k/(z¹_j − z²_k)
//!   V_j = 1 + C(w₂₁ ν₂)(z²_j) + Σ a_k U_k/(z²_j − z¹_k)
//!
//! and q = −(1/π)∫ w₁₂ ν₁ dλ + 2i Σ b_k V_k.

use crate::error::{InverseError, Result};
use crate::solver::{AffineProblem, LinearSolver};
use dnls_numerics::{cauchy_integral, CauchyPlan, ComplexGrid1D, Side, C64, I};
use dnls_spectral::ScatteringData;
use std::f64::consts::PI;

/// One instance (fixed x) of the equations above.
pub struct RowProblem<'a> {
    pub plan: &'a CauchyPlan,
    pub w12: ComplexGrid1D,
    pub w21: ComplexGrid1D,
    pub side1: Side,
    pub side2: Side,
    pub poles1: Vec<C64>,
    pub a: Vec<C64>,
    pub poles2: Vec<C64>,
    pub b: Vec<C64>,
    constant: Vec<C64>,
}

impl<'a> RowProblem<'a> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(plan: &'a CauchyPlan, w12: ComplexGrid1D, w21: ComplexGrid1D, side1: Side, side2: Side, poles1: Vec<C64>, a: Vec<C64>, poles2: Vec<C64>, b: Vec<C64>) -> Result<Self> {
        let n = w12.n();
        let min = w12.h() / 10.0;
        for &z in poles1.iter().chain(&poles2) {
            if z.im.abs() < min {
                return Err(InverseError::PoleNearLine { lam: z, min });
            }
        }
        let (n1, n2) = (poles1.len(), poles2.len());
        let mut constant = vec![C64::new(0.0, 0.0); 2 * n + n1 + n2];
        constant[..n].iter_mut().for_each(|v| *v = C64::new(1.0, 0.0));
        constant[2 * n + n1..].iter_mut().for_each(|v| *v = C64::new(1.0, 0.0));
        Ok(Self { plan, w12, w21, side1, side2, poles1, a, poles2, b, constant })
    }

    fn n(&self) -> usize {
        self.w12.n()
    }

    fn split<'u>(&self, u: &'u [C64]) -> (&'u [C64], &'u [C64], &'u [C64], &'u [C64]) {
        let n = self.n();
        let n1 = self.poles1.len();
        let (nu1, rest) = u.split_at(n);
        let (nu2, rest) = rest.split_at(n);
        let (uu, vv) = rest.split_at(n1);
        (nu1, nu2, uu, vv)
    }

    /// −(1/π)∫ w₁₂ν₁ + 2iΣ b_k V_k.
    pub fn reconstruct(&self, u: &[C64]) -> C64 {
        let (nu1, _, _, vv) = self.split(u);
        let g = self.w12.with_values(self.w12.values.iter().zip(nu1).map(|(w, v)| w * v).collect());
        let cont = -g.trapezoid() / PI;
        let disc: C64 = self.b.iter().zip(vv).map(|(b, v)| b * v).sum();
        cont + 2.0 * I * disc
    }
}

impl AffineProblem for RowProblem<'_> {
    fn constant(&self) -> &[C64] {
        &self.constant
    }

    fn apply(&self, u: &[C64], out: &mut [C64]) -> Result<()> {
        let n = self.n();
        let (n1, n2) = (self.poles1.len(), self.poles2.len());
        let (nu1, nu2, uu, vv) = self.split(u);
        let g1 = self.w12.with_values(self.w12.values.iter().zip(nu1).map(|(w, v)| w * v).collect());
        let g2 = self.w21.with_values(self.w21.values.iter().zip(nu2).map(|(w, v)| w * v).collect());
        let c2 = self.plan.project_values(&g2.values, self.side1);
        let c1 = self.plan.project_values(&g1.values, self.side2);
        let g = self.w12.grid();
        for i in 0..n {
            let lam = C64::new(g.node(i), 0.0);
            let mut s1 = c2[i];
            for k in 0..n1 {
                s1 += self.a[k] * uu[k] / (lam - self.poles1[k]);
            }
            let mut s2 = c1[i];
            for k in 0..n2 {
                s2 += self.b[k] * vv[k] / (lam - self.poles2[k]);
            }
            out[i] = s1;
            out[n + i] = s2;
        }
        for j in 0..n1 {
            let z = self.poles1[j];
            let mut s = cauchy_integral(&g1, z)?;
            for k in 0..n2 {
                s += self.b[k] * vv[k] / (z - self.poles2[k]);
            }
            out[2 * n + j] = s;
        }
        for j in 0..n2 {
            let z = self.poles2[j];
            let mut s = cauchy_integral(&g2, z)?;
            for k in 0..n1 {
                s += self.a[k] * uu[k] / (z - self.poles1[k]);
            }
            out[2 * n + n1 + j] = s;
        }
        Ok(())
    }
}

/// Solved unknowns at one x.
#[derive(Debug, Clone)]
pub struct BealsCoifmanSolution {
    pub x: f64,
    /// First component on the λ-grid.
    pub nu11: ComplexGrid1D,
    /// Second component on the λ-grid.
    pub nu12: ComplexGrid1D,
    /// Points where the first component is sampled (poles of the second) and its values.
    pub nu11_points: Vec<C64>,
    pub nu11_at: Vec<C64>,
    /// Points where the second component is sampled (poles of the first) and its values.
    pub nu12_points: Vec<C64>,
    pub nu12_at: Vec<C64>,
    /// sup-norm residual of the discretized equations.
    pub residual: f64,
    pub iterations: usize,
    pub solver: &'static str,
    /// Reconstructed q(x).
    pub q: C64,
}

/// Which normalization of the problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Normalized at x → +∞; well conditioned for x ≥ 0.
    Right,
    /// Normalized at x → −∞; well conditioned for x ≤ 0. Expects left data.
    Left,
}

/// Build the problem for `data` at `x`. For [`Normalization::Left`] the data must be
/// the left data (see [`crate::left_data`]).
pub fn row_problem<'a>(plan: &'a CauchyPlan, data: &ScatteringData, x: f64, norm: Normalization) -> Result<RowProblem<'a>> {
    let e = data.epsilon.sign();
    let r = data.rho.grid.map(|lam, r| r * C64::new(0.0, -2.0 * lam * x).exp());
    let w21 = r.map(|lam, v| -e * lam * v.conj());
    let pairs = data.discrete.pairs();
    match norm {
        Normalization::Right => {
            let c: Vec<C64> = pairs.iter().map(|p| p.c * (2.0 * I * p.lambda * x).exp()).collect();
            RowProblem::new(
                plan,
                r,
                w21,
                Side::Minus,
                Side::Plus,
                pairs.iter().map(|p| p.lambda).collect(),
                pairs.iter().zip(&c).map(|(p, c)| p.lambda * c).collect(),
                pairs.iter().map(|p| p.lambda.conj()).collect(),
                c.iter().map(|c| e * c.conj()).collect(),
            )
        }
        Normalization::Left => {
            let c: Vec<C64> = pairs.iter().map(|p| p.c * (-2.0 * I * p.lambda * x).exp()).collect();
            RowProblem::new(
                plan,
                r,
                w21,
                Side::Plus,
                Side::Minus,
                pairs.iter().map(|p| p.lambda.conj()).collect(),
                c.iter().map(|c| e * c.conj()).collect(),
                pairs.iter().map(|p| p.lambda).collect(),
                pairs.iter().zip(&c).map(|(p, c)| c / p.lambda).collect(),
            )
        }
    }
}

/// Solve and reconstruct; fails if the residual of the discrete system exceeds `tol`.
pub fn solve_row(plan: &CauchyPlan, data: &ScatteringData, x: f64, norm: Normalization, solver: &dyn LinearSolver, tol: f64) -> Result<BealsCoifmanSolution> {
    let p = row_problem(plan, data, x, norm)?;
    let s = solver.solve(&p)?;
    let residual = p.residual(&s.u)?;
    if !(residual <= tol) {
        return Err(InverseError::Residual { x, residual, tol });
    }
    let q = p.reconstruct(&s.u);
    let (nu1, nu2, uu, vv) = p.split(&s.u);
    Ok(BealsCoifmanSolution {
        x,
        nu11: p.w12.with_values(nu1.to_vec()),
        nu12: p.w12.with_values(nu2.to_vec()),
        nu11_points: p.poles2.clone(),
        nu11_at: vv.to_vec(),
        nu12_points: p.poles1.clone(),
        nu12_at: uu.to_vec(),
        residual,
        iterations: s.iterations,
        solver: s.solver,
        q,
    })
}
