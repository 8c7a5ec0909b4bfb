use crate::error::{DirectError, Result};
use crate::jost::{Direct, Prepared};
use dnls_numerics::{find_zeros, Grid1D, SearchRegion, C64, I};
use dnls_spectral::{DiscreteSpectrum, Eigenpair, Potential, ReflectionCoefficient, ScatteringData};
use std::f64::consts::PI;
use std::sync::Mutex;

/// Intermediate quantities of the norming-constant extraction.
#[derive(Debug, Clone, Copy)]
pub struct NormingDetail {
    pub lambda: C64,
    /// N⁻₁(x, λ_k) = b_k e^{2iλ_k x} N⁺₂(x, λ_k)
    pub b: C64,
    pub alpha_breve_deriv: C64,
    /// relative least-squares residual of the proportionality
    pub residual: f64,
    pub c: C64,
}

impl Direct {
    /// ρ = β/α on a real λ-grid.
    pub fn reflection(&self, q: &Potential, lam_grid: Grid1D) -> Result<ReflectionCoefficient> {
        let (alpha, beta) = self.transition(q, lam_grid)?;
        let nodes = lam_grid.nodes();
        for (lam, a) in nodes.iter().zip(&alpha.values) {
            if a.norm() < self.alpha_floor {
                return Err(DirectError::SpectralSingularity { lam: *lam, alpha_abs: a.norm() });
            }
        }
        let rho = beta.with_values(beta.values.iter().zip(&alpha.values).map(|(b, a)| b / a).collect());
        Ok(ReflectionCoefficient::new(rho, q.epsilon)?)
    }

    /// A search rectangle in the lower half plane sized from ‖q‖∞.
    pub fn default_region(q: &Potential) -> SearchRegion {
        let r = 3f64.max(q.grid.sup_norm().powi(2));
        let margin = (2.0 * q.grid.h()).max(0.02);
        SearchRegion { re_min: -r, re_max: r, im_min: -r, im_max: -margin, max_depth: 10, newton_tol: 1e-11 }
    }

    /// Eigenvalues λ_k ∈ C⁺ (zeros of ᾰ) found as conjugates of the zeros of α in `region`.
    pub fn eigenvalues(&self, q: &Potential, region: &SearchRegion) -> Result<Vec<C64>> {
        let margin = 2.0 * q.grid.h();
        if region.im_max > -margin {
            return Err(DirectError::RegionMargin { im_max: region.im_max, margin });
        }
        let failure: Mutex<Option<DirectError>> = Mutex::new(None);
        let p = self.prepare(q);
        let f = |z: C64| match self.alpha_lower_p(&p, z) {
            Ok(v) => v,
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                C64::new(1.0, 0.0)
            }
        };
        let zeros = find_zeros(&f, region);
        if let Some(e) = failure.into_inner().unwrap() {
            return Err(e);
        }
        let out: Vec<C64> = zeros?.into_iter().map(|z| z.conj()).collect();
        for z in &out {
            if z.im < 0.05 {
                log::warn!("eigenvalue {z} lies within 0.05 of the real axis");
            }
        }
        Ok(out)
    }

    /// ᾰ'(λ) by the Cauchy integral over a circle of radius `r`.
    pub fn alpha_breve_deriv(&self, q: &Potential, lam: C64, r: f64) -> Result<C64> {
        self.alpha_breve_deriv_p(&self.prepare(q), lam, r)
    }

    fn alpha_breve_deriv_p(&self, p: &Prepared, lam: C64, r: f64) -> Result<C64> {
        use rayon::prelude::*;
        let n = self.circle_nodes;
        let vals: Vec<C64> = (0..n)
            .into_par_iter()
            .map(|j| {
                let th = 2.0 * PI * j as f64 / n as f64;
                let w = C64::from_polar(1.0, th);
                Ok(self.alpha_lower_p(p, (lam + w * r).conj())?.conj() / w)
            })
            .collect::<Result<_>>()?;
        Ok(vals.iter().sum::<C64>() / (n as f64 * r))
    }

    pub fn norming_detail(&self, q: &Potential, eigen: &[C64]) -> Result<Vec<NormingDetail>> {
        let p = self.prepare(q);
        eigen
            .iter()
            .enumerate()
            .map(|(k, &lk)| {
                let (u, v2, x) = self.analytic_columns_at_match(&p, lk)?;
                let ph = (I * 2.0 * lk * x).exp();
                let v = [v2[0] * ph, v2[1] * ph];
                let vv = v[0].norm_sqr() + v[1].norm_sqr();
                let b = (v[0].conj() * u[0] + v[1].conj() * u[1]) / vv;
                let res = ((u[0] - b * v[0]).norm_sqr() + (u[1] - b * v[1]).norm_sqr()).sqrt()
                    / (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
                if res > 1e-4 {
                    return Err(DirectError::Inconsistent { lam: lk, residual: res });
                }
                let d = eigen
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &lj)| (lk - lj).norm())
                    .fold(lk.im, f64::min);
                let r = (0.1f64).min(d / 4.0);
                let da = self.alpha_breve_deriv_p(&p, lk, r)?;
                if da.norm() < 1e-8 {
                    return Err(DirectError::DegenerateDerivative { lam: lk, value: da.norm() });
                }
                Ok(NormingDetail { lambda: lk, b, alpha_breve_deriv: da, residual: res, c: b / (lk * da) })
            })
            .collect()
    }

    /// C_k = b_k / (λ_k ᾰ'(λ_k)).
    pub fn norming_constants(&self, q: &Potential, eigen: &[C64]) -> Result<DiscreteSpectrum> {
        let d = self.norming_detail(q, eigen)?;
        Ok(DiscreteSpectrum::new(d.iter().map(|n| Eigenpair { lambda: n.lambda, c: n.c }).collect())?)
    }

    /// The full direct map q ↦ (ρ, {λ_k, C_k}).
    pub fn scatter(&self, q: &Potential, lam_grid: Grid1D, region: &SearchRegion) -> Result<ScatteringData> {
        let rho = self.reflection(q, lam_grid)?;
        let eig = self.eigenvalues(q, region)?;
        let discrete = self.norming_constants(q, &eig)?;
        Ok(ScatteringData::new(rho, discrete, q.epsilon)?)
    }
}
