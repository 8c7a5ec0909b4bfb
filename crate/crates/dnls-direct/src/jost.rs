//! Jost solutions N^± of dN/dx = −iλ[σ₃, N] + (Q_λ + P)N, normalized to the
//! identity at x → ±∞, and the transition matrix between them.

use crate::error::{DirectError, Result};
use crate::integrator::{JostIntegrator, Magnus4};
use crate::mat2::M2;
use dnls_numerics::{ComplexGrid1D, Grid1D, C64, I};
use dnls_spectral::Potential;
use std::sync::{Arc, OnceLock};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    /// normalized at the right edge
    Plus,
    /// normalized at the left edge
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Columns {
    First,
    Second,
    Both,
}

impl Columns {
    fn has(self, j: usize) -> bool {
        matches!((self, j), (Columns::Both, _) | (Columns::First, 0) | (Columns::Second, 1))
    }
}

/// Sampled Jost solution; columns that were not requested are `None`.
#[derive(Debug, Clone)]
pub struct JostSolution {
    pub which: Which,
    pub lambda: C64,
    pub grid: Grid1D,
    pub first: Option<Vec<[C64; 2]>>,
    pub second: Option<Vec<[C64; 2]>>,
}

impl JostSolution {
    pub fn matrix(&self, i: usize) -> Option<M2> {
        Some(M2::from_cols(self.first.as_ref()?[i], self.second.as_ref()?[i]))
    }
}

/// Largest Δx·|λ| allowed in one propagator step; larger grid steps are subdivided.
const MAX_PHASE_STEP: f64 = 0.25;

const MAX_CACHED_SUBSTEPS: usize = 8;

/// A potential together with its samples at the integrator's quadrature points
/// (interpolated to sixth order), cached per substep count.
pub struct Prepared<'a> {
    pub q: &'a Potential,
    nodes: &'static [f64],
    cache: Vec<OnceLock<Vec<C64>>>,
}

impl Prepared<'_> {
    fn build(&self, m: usize) -> Vec<C64> {
        let g = &self.q.grid;
        let n = g.n();
        let mut out = Vec::with_capacity((n - 1) * m * self.nodes.len());
        for i in 0..n - 1 {
            let x0 = g.node(i);
            let sub = (g.node(i + 1) - x0) / m as f64;
            for s in 0..m {
                for &c in self.nodes {
                    out.push(g.interp6(x0 + (s as f64 + c) * sub));
                }
            }
        }
        out
    }

    fn samples(&self, m: usize) -> std::borrow::Cow<'_, [C64]> {
        match self.cache.get(m - 1) {
            Some(cell) => std::borrow::Cow::Borrowed(cell.get_or_init(|| self.build(m))),
            None => std::borrow::Cow::Owned(self.build(m)),
        }
    }
}

/// Configuration shared by all direct-scattering operations.
#[derive(Clone)]
pub struct Direct {
    pub integrator: Arc<dyn JostIntegrator>,
    /// entries above this abort with an overflow error
    pub overflow: f64,
    /// quadrature nodes on the circle used for ᾰ'(λ_k)
    pub circle_nodes: usize,
    /// |α| below this on the real line is reported as a spectral singularity
    pub alpha_floor: f64,
}

impl Default for Direct {
    fn default() -> Self {
        Self { integrator: Arc::new(Magnus4), overflow: 1e12, circle_nodes: 64, alpha_floor: 1e-6 }
    }
}

impl std::fmt::Debug for Direct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Direct").field("integrator", &self.integrator.name()).field("overflow", &self.overflow).finish()
    }
}

impl Direct {
    pub fn with_integrator(integrator: Arc<dyn JostIntegrator>) -> Self {
        Self { integrator, ..Self::default() }
    }

    /// Caches q at the integrator's sample points for repeated sweeps over one potential.
    pub fn prepare<'a>(&self, q: &'a Potential) -> Prepared<'a> {
        Prepared { q, nodes: self.integrator.nodes(), cache: (0..MAX_CACHED_SUBSTEPS).map(|_| OnceLock::new()).collect() }
    }

    /// Carries the requested columns of N from node `from` to node `to`,
    /// calling `visit(i, state)` at every node including both ends.
    pub(crate) fn propagate(
        &self,
        p: &Prepared,
        lam: C64,
        from: usize,
        to: usize,
        init: [Option<[C64; 2]>; 2],
        mut visit: impl FnMut(usize, &[Option<[C64; 2]>; 2]),
    ) -> Result<[Option<[C64; 2]>; 2]> {
        let g = &p.q.grid;
        let e = p.q.epsilon.sign();
        let k = p.nodes.len();
        let u = |v: C64| -> M2 {
            let pp = C64::new(0.0, 0.5 * e * v.norm_sqr());
            M2::new(-I * lam - pp, v, lam * e * v.conj(), I * lam + pp)
        };
        let h_grid = g.h();
        let m = ((lam.norm() * h_grid) / MAX_PHASE_STEP).ceil().max(1.0) as usize;
        let samples = p.samples(m);
        let mut a = vec![M2::ZERO; k];
        let mut state = init;
        visit(from, &state);
        let mut i = from;
        while i != to {
            let right = to > i;
            let j = if right { i + 1 } else { i - 1 };
            let (x0, x1) = (g.node(i), g.node(j));
            let sub = (x1 - x0) / m as f64;
            let d = [(I * lam * sub).exp(), (-I * lam * sub).exp()];
            let interval = i.min(j);
            for s in 0..m {
                for r in 0..k {
                    let (ss, rr) = if right { (s, r) } else { (m - 1 - s, k - 1 - r) };
                    a[r] = u(samples[(interval * m + ss) * k + rr]);
                }
                let phi = self.integrator.propagator(&a, sub);
                for (c, col) in state.iter_mut().enumerate() {
                    if let Some(v) = col {
                        let w = phi.apply(*v);
                        *v = [w[0] * d[c], w[1] * d[c]];
                    }
                }
            }
            for col in state.iter().flatten() {
                let size = col[0].norm().max(col[1].norm());
                if !(size <= self.overflow) {
                    return Err(DirectError::Overflow { lam, x: x1, size });
                }
            }
            i = j;
            visit(i, &state);
        }
        Ok(state)
    }

    fn identity_columns(cols: Columns) -> [Option<[C64; 2]>; 2] {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        [cols.has(0).then_some([one, zero]), cols.has(1).then_some([zero, one])]
    }

    /// N^± sampled on the whole x-grid.
    pub fn jost(&self, q: &Potential, lam: C64, which: Which, cols: Columns) -> Result<JostSolution> {
        let g = q.grid.grid();
        let n = g.n;
        let (from, to) = match which {
            Which::Plus => (n - 1, 0),
            Which::Minus => (0, n - 1),
        };
        let mut first = cols.has(0).then(|| vec![[C64::new(0.0, 0.0); 2]; n]);
        let mut second = cols.has(1).then(|| vec![[C64::new(0.0, 0.0); 2]; n]);
        self.propagate(&self.prepare(q), lam, from, to, Self::identity_columns(cols), |i, s| {
            if let (Some(f), Some(v)) = (first.as_mut(), s[0]) {
                f[i] = v;
            }
            if let (Some(f), Some(v)) = (second.as_mut(), s[1]) {
                f[i] = v;
            }
        })?;
        Ok(JostSolution { which, lambda: lam, grid: g, first, second })
    }

    /// Index of the grid node used as the matching point (closest to x = 0).
    pub fn matching_node(q: &Potential) -> usize {
        q.grid.grid().nearest(0.0)
    }

    fn columns_at(&self, p: &Prepared, lam: C64, which: Which, cols: Columns, at: usize) -> Result<[Option<[C64; 2]>; 2]> {
        let n = p.q.grid.n();
        let from = match which {
            Which::Plus => n - 1,
            Which::Minus => 0,
        };
        self.propagate(p, lam, from, at, Self::identity_columns(cols), |_, _| {})
    }

    /// Full transition matrix T(λ) = [[α, β], [λβ̆, ᾰ]] with Ψ⁺ = Ψ⁻T, real λ.
    pub fn transition_at(&self, q: &Potential, lam: f64) -> Result<M2> {
        self.transition_at_p(&self.prepare(q), lam)
    }

    pub(crate) fn transition_at_p(&self, p: &Prepared, lam: f64) -> Result<M2> {
        let q = p.q;
        let m = Self::matching_node(q);
        let x = q.grid.node(m);
        let lc = C64::new(lam, 0.0);
        let [a, b] = self.columns_at(p, lc, Which::Minus, Columns::Both, m)?;
        let nm = M2::from_cols(a.unwrap(), b.unwrap());
        let [a, b] = self.columns_at(p, lc, Which::Plus, Columns::Both, m)?;
        let np = M2::from_cols(a.unwrap(), b.unwrap());
        let t = nm.inverse() * np;
        let ph = C64::new(0.0, 2.0 * lam * x).exp();
        Ok(M2::new(t.0[0][0], t.0[0][1] * ph, t.0[1][0] / ph, t.0[1][1]))
    }

    /// α(λ) and β(λ) on a real λ-grid.
    pub fn transition(&self, q: &Potential, lam_grid: Grid1D) -> Result<(ComplexGrid1D, ComplexGrid1D)> {
        use rayon::prelude::*;
        let p = self.prepare(q);
        let ts: Vec<M2> = lam_grid.nodes().par_iter().map(|&l| self.transition_at_p(&p, l)).collect::<Result<_>>()?;
        let alpha = lam_grid.sample(|_| C64::new(0.0, 0.0)).with_values(ts.iter().map(|t| t.0[0][0]).collect());
        let beta = alpha.with_values(ts.iter().map(|t| t.0[0][1]).collect());
        Ok((alpha, beta))
    }

    /// α(λ) for Im λ ≤ 0 from the first column of N⁺ carried to the left edge.
    pub fn alpha_lower(&self, q: &Potential, lam: C64) -> Result<C64> {
        self.alpha_lower_p(&self.prepare(q), lam)
    }

    pub(crate) fn alpha_lower_p(&self, p: &Prepared, lam: C64) -> Result<C64> {
        let [a, _] = self.columns_at(p, lam, Which::Plus, Columns::First, 0)?;
        Ok(a.unwrap()[0])
    }

    /// ᾰ(λ) = conj α(λ̄) for Im λ ≥ 0.
    pub fn alpha_breve(&self, q: &Potential, lam: C64) -> Result<C64> {
        Ok(self.alpha_lower(q, lam.conj())?.conj())
    }

    /// First column of N⁻ and second column of N⁺ at the matching node (used for b_k).
    pub(crate) fn analytic_columns_at_match(&self, p: &Prepared, lam: C64) -> Result<([C64; 2], [C64; 2], f64)> {
        let q = p.q;
        let m = Self::matching_node(q);
        let [a, _] = self.columns_at(p, lam, Which::Minus, Columns::First, m)?;
        let [_, b] = self.columns_at(p, lam, Which::Plus, Columns::Second, m)?;
        Ok((a.unwrap(), b.unwrap(), q.grid.node(m)))
    }
}
