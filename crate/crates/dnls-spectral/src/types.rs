use crate::error::{Result, SpectralError};
use dnls_numerics::{ComplexGrid1D, C64};
use serde::{Deserialize, Serialize};

/// The sign ε in front of the nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Epsilon::Plus => 1.0,
            Epsilon::Minus => -1.0,
        }
    }
    pub fn as_i8(self) -> i8 {
        self.sign() as i8
    }
}

impl TryFrom<i64> for Epsilon {
    type Error = SpectralError;
    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Epsilon::Plus),
            -1 => Ok(Epsilon::Minus),
            other => Err(SpectralError::BadEpsilon(other)),
        }
    }
}

impl From<Epsilon> for i64 {
    fn from(e: Epsilon) -> i64 {
        e.as_i8() as i64
    }
}

impl std::fmt::Display for Epsilon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:+}", self.as_i8())
    }
}

/// Samples of q(x) together with ε.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    pub grid: ComplexGrid1D,
    pub epsilon: Epsilon,
}

impl Potential {
    pub fn new(grid: ComplexGrid1D, epsilon: Epsilon) -> Self {
        let p = Self { grid, epsilon };
        let r = p.decay_ratio();
        if r > 1e-3 {
            log::warn!("potential does not decay at the grid edges (edge/max = {r:.2e})");
        }
        p
    }

    /// max(|q(x_min)|, |q(x_max)|) / max|q|, 0 for q ≡ 0.
    pub fn decay_ratio(&self) -> f64 {
        let m = self.grid.sup_norm();
        if m == 0.0 {
            return 0.0;
        }
        let v = &self.grid.values;
        v[0].norm().max(v[v.len() - 1].norm()) / m
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.grid.map(|_, v| C64::new(v.norm_sqr(), 0.0)).trapezoid().re
    }
}

/// One eigenvalue (Im λ > 0) with its norming constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenpair {
    pub lambda: C64,
    pub c: C64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscreteSpectrum {
    pairs: Vec<Eigenpair>,
}

impl DiscreteSpectrum {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(pairs: Vec<Eigenpair>) -> Result<Self> {
        for (k, p) in pairs.iter().enumerate() {
            if !(p.lambda.im > 0.0) {
                return Err(SpectralError::InvalidSpectrum(format!("λ_{k} = {} is not in the upper half plane", p.lambda)));
            }
            if !(p.c.norm() > 0.0) || !p.c.re.is_finite() || !p.c.im.is_finite() {
                return Err(SpectralError::InvalidSpectrum(format!("C_{k} = {} must be finite and non-zero", p.c)));
            }
            for (j, q) in pairs[..k].iter().enumerate() {
                if (p.lambda - q.lambda).norm() < 1e-10 {
                    return Err(SpectralError::InvalidSpectrum(format!("λ_{j} and λ_{k} coincide")));
                }
            }
        }
        Ok(Self { pairs })
    }

    pub fn from_pairs(pairs: &[(C64, C64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(lambda, c)| Eigenpair { lambda, c }).collect())
    }

    pub fn pairs(&self) -> &[Eigenpair] {
        &self.pairs
    }
    pub fn len(&self) -> usize {
        self.pairs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
    pub fn lambdas(&self) -> Vec<C64> {
        self.pairs.iter().map(|p| p.lambda).collect()
    }
    pub fn constants(&self) -> Vec<C64> {
        self.pairs.iter().map(|p| p.c).collect()
    }

    /// Same eigenvalues, new constants (used by the flow).
    pub fn map_constants(&self, f: impl Fn(&Eigenpair) -> C64) -> Self {
        Self { pairs: self.pairs.iter().map(|p| Eigenpair { lambda: p.lambda, c: f(p) }).collect() }
    }
}

/// Samples of ρ(λ) on a real λ-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionCoefficient {
    pub grid: ComplexGrid1D,
    pub epsilon: Epsilon,
}

impl ReflectionCoefficient {
    pub fn new(grid: ComplexGrid1D, epsilon: Epsilon) -> Result<Self> {
        let e = epsilon.sign();
        for (lam, v) in grid.nodes().into_iter().zip(&grid.values) {
            let d = 1.0 - e * lam * v.norm_sqr();
            if !(d > 0.0) {
                return Err(SpectralError::Constraint { lam, value: d });
            }
        }
        Ok(Self { grid, epsilon })
    }

    pub fn zero(grid: dnls_numerics::Grid1D, epsilon: Epsilon) -> Self {
        Self { grid: ComplexGrid1D::zeros(grid), epsilon }
    }

    pub fn is_zero(&self) -> bool {
        self.grid.values.iter().all(|v| *v == C64::new(0.0, 0.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringData {
    pub rho: ReflectionCoefficient,
    pub discrete: DiscreteSpectrum,
    pub epsilon: Epsilon,
}

impl ScatteringData {
    pub fn new(rho: ReflectionCoefficient, discrete: DiscreteSpectrum, epsilon: Epsilon) -> Result<Self> {
        if rho.epsilon != epsilon {
            return Err(SpectralError::EpsilonMismatch { rho: rho.epsilon.as_i8(), data: epsilon.as_i8() });
        }
        Ok(Self { rho, discrete, epsilon })
    }

    /// Reflectionless data on a given λ-grid.
    pub fn reflectionless(discrete: DiscreteSpectrum, epsilon: Epsilon, lam_grid: dnls_numerics::Grid1D) -> Self {
        Self { rho: ReflectionCoefficient::zero(lam_grid, epsilon), discrete, epsilon }
    }
}
