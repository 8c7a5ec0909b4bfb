use crate::error::Result;
use dnls_direct::Direct;
use dnls_inverse::Inverse;
use dnls_numerics::{Grid1D, SearchRegion};
use dnls_spectral::Potential;

/// The IST solution operator q0 ↦ invert(flow(scatter(q0), t)) on q0's grid.
#[derive(Debug, Clone)]
pub struct Ist {
    pub direct: Direct,
    pub inverse: Inverse,
    pub lam_grid: Grid1D,
    /// None → [`Direct::default_region`]
    pub region: Option<SearchRegion>,
}

impl Default for Ist {
    fn default() -> Self {
        Self { direct: Direct::default(), inverse: Inverse::default(), lam_grid: dnls_direct::default_lambda_grid(), region: None }
    }
}

impl Ist {
    pub fn evolve(&self, q0: &Potential, t: f64) -> Result<Potential> {
        self.evolve_on(q0, t, q0.grid.grid())
    }

    /// As [`evolve`](Self::evolve), reconstructing only on `x_grid`.
    pub fn evolve_on(&self, q0: &Potential, t: f64, x_grid: Grid1D) -> Result<Potential> {
        let region = self.region.unwrap_or_else(|| Direct::default_region(q0));
        let data = self.direct.scatter(q0, self.lam_grid, &region)?;
        Ok(self.inverse.invert(&data, t, x_grid)?.potential)
    }
}

pub fn evolve_ist(q0: &Potential, t: f64) -> Result<Potential> {
    Ist::default().evolve(q0, t)
}
