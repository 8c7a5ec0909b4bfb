use crate::error::{NumericsError, Result};
use crate::C64;

/// Uniform sampling descriptor: `n` nodes on `[min, max]`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(NumericsError::InvalidGrid(format!("need min < max, got [{min}, {max}]")));
        }
        if n < 2 {
            return Err(NumericsError::InvalidGrid(format!("need at least 2 nodes, got {n}")));
        }
        Ok(Self { min, max, n })
    }

    #[inline]
    pub fn h(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        // Last node is pinned to `max` so the endpoint is exact.
        if i + 1 == self.n {
            self.max
        } else {
            self.min + i as f64 * self.h()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }

    /// Index of the node nearest to `x` (clamped to the grid).
    pub fn nearest(&self, x: f64) -> usize {
        let k = ((x - self.min) / self.h()).round();
        k.clamp(0.0, (self.n - 1) as f64) as usize
    }

    pub fn sample(&self, f: impl Fn(f64) -> C64) -> ComplexGrid1D {
        ComplexGrid1D { x_min: self.min, x_max: self.max, values: self.nodes().into_iter().map(f).collect() }
    }
}

/// Complex samples on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub values: Vec<C64>,
}

impl ComplexGrid1D {
    pub fn new(x_min: f64, x_max: f64, values: Vec<C64>) -> Result<Self> {
        Grid1D::new(x_min, x_max, values.len())?;
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(NumericsError::InvalidGrid("non-finite sample".into()));
        }
        Ok(Self { x_min, x_max, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self { x_min: grid.min, x_max: grid.max, values: vec![C64::new(0.0, 0.0); grid.n] }
    }

    #[inline]
    pub fn grid(&self) -> Grid1D {
        Grid1D { min: self.x_min, max: self.x_max, n: self.values.len() }
    }
    #[inline]
    pub fn n(&self) -> usize {
        self.values.len()
    }
    #[inline]
    pub fn h(&self) -> f64 {
        self.grid().h()
    }
    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        self.grid().node(i)
    }
    pub fn nodes(&self) -> Vec<f64> {
        self.grid().nodes()
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<C64>) -> Self {
        assert_eq!(values.len(), self.values.len(), "grid length mismatch");
        Self { x_min: self.x_min, x_max: self.x_max, values }
    }

    /// Pointwise map `f(x, value)`.
    pub fn map(&self, f: impl Fn(f64, C64) -> C64) -> Self {
        let g = self.grid();
        self.with_values(self.values.iter().enumerate().map(|(i, &v)| f(g.node(i), v)).collect())
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Composite trapezoid rule over the whole grid.
    pub fn trapezoid(&self) -> C64 {
        let n = self.n();
        let inner: C64 = self.values[1..n - 1].iter().sum();
        (inner + (self.values[0] + self.values[n - 1]) * 0.5) * self.h()
    }

    /// Running trapezoid integral from the left edge: `out[i] = ∫_{x_min}^{x_i}`.
    pub fn cumulative_trapezoid(&self) -> Vec<C64> {
        let h = self.h();
        let mut out = Vec::with_capacity(self.n());
        let mut acc = C64::new(0.0, 0.0);
        out.push(acc);
        for w in self.values.windows(2) {
            acc += (w[0] + w[1]) * (0.5 * h);
            out.push(acc);
        }
        out
    }

    /// Four-point (cubic Lagrange) interpolation; zero outside the grid,
    /// consistent with the decay assumption on sampled data.
    pub fn interp(&self, x: f64) -> C64 {
        let n = self.n();
        if x < self.x_min || x > self.x_max {
            return C64::new(0.0, 0.0);
        }
        let h = self.h();
        let s = (x - self.x_min) / h;
        let mut j = s.floor() as isize - 1;
        j = j.clamp(0, n as isize - 4);
        if n < 4 {
            // Linear fallback for tiny grids.
            let k = (s.floor() as usize).min(n - 2);
            let t = s - k as f64;
            return self.values[k] * (1.0 - t) + self.values[k + 1] * t;
        }
        let j = j as usize;
        let t = s - j as f64; // position relative to node j, in [0, 3]
        let (t0, t1, t2, t3) = (t, t - 1.0, t - 2.0, t - 3.0);
        let w0 = -t1 * t2 * t3 / 6.0;
        let w1 = t0 * t2 * t3 / 2.0;
        let w2 = -t0 * t1 * t3 / 2.0;
        let w3 = t0 * t1 * t2 / 6.0;
        self.values[j] * w0 + self.values[j + 1] * w1 + self.values[j + 2] * w2 + self.values[j + 3] * w3
    }

    /// Six-point (quintic Lagrange) interpolation, for integrands that need
    /// O(h⁶) accuracy between nodes; falls back to [`interp`](Self::interp) on short grids.
    pub fn interp6(&self, x: f64) -> C64 {
        let n = self.n();
        if n < 6 {
            return self.interp(x);
        }
        if x < self.x_min || x > self.x_max {
            return C64::new(0.0, 0.0);
        }
        let s = (x - self.x_min) / self.h();
        let j = (s.floor() as isize - 2).clamp(0, n as isize - 6) as usize;
        let t = s - j as f64;
        let mut out = C64::new(0.0, 0.0);
        for a in 0..6 {
            let mut w = 1.0;
            for b in 0..6 {
                if a != b {
                    w *= (t - b as f64) / (a as f64 - b as f64);
                }
            }
            out += self.values[j + a] * w;
        }
        out
    }

    /// Cubic resampling onto another grid.
    pub fn resample(&self, target: Grid1D) -> Self {
        target.sample(|x| self.interp(x))
    }

    /// Fourth-order central-difference derivative (one-sided near the edges).
    pub fn derivative(&self) -> Self {
        let n = self.n();
        let h = self.h();
        let v = &self.values;
        let mut d = vec![C64::new(0.0, 0.0); n];
        if n < 5 {
            for i in 0..n {
                let (a, b) = if i == 0 { (0, 1) } else if i == n - 1 { (n - 2, n - 1) } else { (i - 1, i + 1) };
                d[i] = (v[b] - v[a]) / ((b - a) as f64 * h);
            }
            return self.with_values(d);
        }
        for i in 2..n - 2 {
            d[i] = (v[i - 2] - v[i - 1] * 8.0 + v[i + 1] * 8.0 - v[i + 2]) / (12.0 * h);
        }
        let fwd = |i: usize| (v[i] * -25.0 + v[i + 1] * 48.0 - v[i + 2] * 36.0 + v[i + 3] * 16.0 - v[i + 4] * 3.0) / (12.0 * h);
        let bwd = |i: usize| (v[i] * 25.0 - v[i - 1] * 48.0 + v[i - 2] * 36.0 - v[i - 3] * 16.0 + v[i - 4] * 3.0) / (12.0 * h);
        d[0] = fwd(0);
        d[1] = fwd(1);
        d[n - 1] = bwd(n - 1);
        d[n - 2] = bwd(n - 2);
        self.with_values(d)
    }
}
