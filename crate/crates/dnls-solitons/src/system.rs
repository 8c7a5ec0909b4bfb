use crate::error::{Result, SolitonError};
use dnls_numerics::{C64, I};
use dnls_spectral::{DiscreteSpectrum, Epsilon};
use nalgebra::{DMatrix, DVector};

const MAX_COND: f64 = 1e12;

/// Sign of time, selecting which side of ξ counts as "growing".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Future,
    Past,
}

impl Direction {
    pub fn of(t: f64) -> Self {
        if t < 0.0 {
            Direction::Past
        } else {
            Direction::Future
        }
    }
    pub fn sign(self) -> f64 {
        match self {
            Direction::Future => 1.0,
            Direction::Past => -1.0,
        }
    }
}

/// Split of the eigenvalue indices: residues of `minus` are renormalized by the Blaschke factor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Partition {
    pub minus: Vec<usize>,
    pub plus: Vec<usize>,
}

impl Partition {
    fn flags(&self, n: usize) -> Vec<bool> {
        let mut f = vec![false; n];
        for &k in &self.minus {
            f[k] = true;
        }
        f
    }
}

/// Δ⁻ = {k : η(Re λ_k − ξ) < 0}, Δ⁺ the rest.
pub fn partition(d: &DiscreteSpectrum, xi: f64, eta: Direction) -> Partition {
    let (minus, plus) = (0..d.len()).partition(|&k| eta.sign() * (d.pairs()[k].lambda.re - xi) < 0.0);
    Partition { minus, plus }
}

/// Partition chosen for conditioning at a single (x, t): residues that would be
/// exponentially large go to Δ⁻.
pub fn balanced_partition(d: &DiscreteSpectrum, x: f64, t: f64) -> Partition {
    let (minus, plus) = (0..d.len()).partition(|&k| {
        let p = &d.pairs()[k];
        log_c(p.lambda, p.c, x, t).re > 0.0
    });
    Partition { minus, plus }
}

/// log(C e^{2iλx + 4iλ²t}).
fn log_c(lam: C64, c: C64, x: f64, t: f64) -> C64 {
    c.ln() + I * (2.0 * lam * x + 4.0 * lam * lam * t)
}

/// 𝔅(λ) = ∏_{k∈Δ⁻} (λ − λ̄_k)/(λ − λ_k).
pub fn blaschke(lam: C64, d: &DiscreteSpectrum, minus: &[usize]) -> Result<C64> {
    let mut b = C64::new(1.0, 0.0);
    for &k in minus {
        let lk = d.pairs()[k].lambda;
        if lam == lk {
            return Err(SolitonError::Pole { lam });
        }
        b *= (lam - lk.conj()) / (lam - lk);
    }
    Ok(b)
}

/// Residue coefficients of the Blaschke-renormalized row
/// ñ₁ = 1 + Σ_{Δ⁺} A_k/(λ−λ_k) + Σ_{Δ⁻} A_k/(λ−λ̄_k),
/// ñ₂ = Σ_{Δ⁺} B_k/(λ−λ̄_k) + Σ_{Δ⁻} B_k/(λ−λ_k).
#[derive(Debug, Clone)]
pub struct SolitonCoefficients {
    pub a: Vec<C64>,
    pub b: Vec<C64>,
    pub partition: Partition,
    pub x: f64,
    pub t: f64,
    /// Relative residual of the solved system.
    pub residual: f64,
    lambdas: Vec<C64>,
    minus: Vec<bool>,
    epsilon: Epsilon,
}

impl SolitonCoefficients {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    fn pole1(&self, k: usize) -> C64 {
        if self.minus[k] {
            self.lambdas[k].conj()
        } else {
            self.lambdas[k]
        }
    }

    fn pole2(&self, k: usize) -> C64 {
        self.pole1(k).conj()
    }

    /// (ñ₁, ñ₂)(λ).
    pub fn row(&self, lam: C64) -> Result<(C64, C64)> {
        let mut n1 = C64::new(1.0, 0.0);
        let mut n2 = C64::new(0.0, 0.0);
        for k in 0..self.len() {
            let (p1, p2) = (self.pole1(k), self.pole2(k));
            if lam == p1 || lam == p2 {
                return Err(SolitonError::Pole { lam });
            }
            n1 += self.a[k] / (lam - p1);
            n2 += self.b[k] / (lam - p2);
        }
        Ok((n1, n2))
    }

    /// N^sol(λ), with the second row from the symmetry
    /// N₂₂(λ) = conj N₁₁(λ̄), N₂₁(λ) = ελ conj N₁₂(λ̄).
    pub fn matrix(&self, lam: C64) -> Result<[[C64; 2]; 2]> {
        let first = |z: C64| -> Result<(C64, C64)> {
            let (n1, n2) = self.row(z)?;
            let bl = self.blaschke(z)?;
            Ok((n1 * bl, n2 / bl))
        };
        let (n11, n12) = first(lam)?;
        let (m11, m12) = first(lam.conj())?;
        Ok([[n11, n12], [self.epsilon.sign() * lam * m12.conj(), m11.conj()]])
    }

    fn blaschke(&self, lam: C64) -> Result<C64> {
        let mut b = C64::new(1.0, 0.0);
        for (k, &m) in self.minus.iter().enumerate() {
            if m {
                let lk = self.lambdas[k];
                if lam == lk {
                    return Err(SolitonError::Pole { lam });
                }
                b *= (lam - lk.conj()) / (lam - lk);
            }
        }
        Ok(b)
    }

    /// q = 2i × (1/λ coefficient of N₁₂); the Blaschke factor tends to 1 and
    /// ñ₂ = O(1/λ), so this is 2i Σ B_k.
    pub fn q(&self) -> C64 {
        2.0 * I * self.b.iter().sum::<C64>()
    }
}

/// (1/𝔅)'(λ_k) for k ∈ Δ⁻, by the product rule (only the vanishing factor survives).
fn inv_blaschke_deriv(lams: &[C64], minus: &[bool], k: usize) -> C64 {
    let lk = lams[k];
    let mut v = 1.0 / (lk - lk.conj());
    for (j, &m) in minus.iter().enumerate() {
        if m && j != k {
            v *= (lk - lams[j]) / (lk - lams[j].conj());
        }
    }
    v
}

pub fn solve_system(d: &DiscreteSpectrum, eps: Epsilon, xi: f64, eta: Direction, x: f64, t: f64) -> Result<SolitonCoefficients> {
    solve_partitioned(d, eps, &partition(d, xi, eta), x, t)
}

pub fn solve_partitioned(d: &DiscreteSpectrum, eps: Epsilon, part: &Partition, x: f64, t: f64) -> Result<SolitonCoefficients> {
    let n = d.len();
    let lams = d.lambdas();
    let minus = part.flags(n);
    let e = eps.sign();

    // γ_k in log form so that large |x|, |t| do not overflow
    let mut gamma = Vec::with_capacity(n);
    for k in 0..n {
        let p = &d.pairs()[k];
        let lc = log_c(p.lambda, p.c, x, t);
        let lg = if minus[k] {
            -lc - 2.0 * inv_blaschke_deriv(&lams, &minus, k).ln()
        } else {
            let mut bl = C64::new(1.0, 0.0);
            for (j, &m) in minus.iter().enumerate() {
                if m {
                    bl *= (p.lambda - lams[j].conj()) / (p.lambda - lams[j]);
                }
            }
            lc - 2.0 * bl.ln()
        };
        gamma.push(lg.exp());
    }

    let pole1 = |j: usize| if minus[j] { lams[j].conj() } else { lams[j] };
    let pole2 = |j: usize| pole1(j).conj();

    // unknowns z = [A; B]
    let mut m = DMatrix::<C64>::identity(2 * n, 2 * n);
    let mut rhs = DVector::<C64>::zeros(2 * n);
    for k in 0..n {
        let (lk, g) = (lams[k], gamma[k]);
        if minus[k] {
            // A_k = ε γ̄_k ñ₂(λ̄_k),  B_k = γ_k/λ_k ñ₁(λ_k)
            let s = e * g.conj();
            for j in 0..n {
                m[(k, n + j)] -= s / (lk.conj() - pole2(j));
            }
            let s = g / lk;
            for j in 0..n {
                m[(n + k, j)] -= s / (lk - pole1(j));
            }
            rhs[n + k] = s;
        } else {
            // A_k = λ_k γ_k ñ₂(λ_k),  B_k = ε γ̄_k ñ₁(λ̄_k)
            let s = lk * g;
            for j in 0..n {
                m[(k, n + j)] -= s / (lk - pole2(j));
            }
            let s = e * g.conj();
            for j in 0..n {
                m[(n + k, j)] -= s / (lk.conj() - pole1(j));
            }
            rhs[n + k] = s;
        }
    }

    let (z, residual) = if n == 0 {
        (DVector::zeros(0), 0.0)
    } else {
        let lu = m.clone().lu();
        let inv = lu.try_inverse().ok_or(SolitonError::Singular { cond: f64::INFINITY })?;
        let cond = norm1(&m) * norm1(&inv);
        if !(cond <= MAX_COND) {
            return Err(SolitonError::Singular { cond });
        }
        let z = &inv * &rhs;
        let r = (&m * &z - &rhs).camax();
        let scale = norm1(&m) * z.camax() + rhs.camax();
        (z, if scale > 0.0 { r / scale } else { r })
    };

    Ok(SolitonCoefficients {
        a: z.rows(0, n).iter().copied().collect(),
        b: z.rows(n, n).iter().copied().collect(),
        partition: part.clone(),
        x,
        t,
        residual,
        lambdas: lams,
        minus,
        epsilon: eps,
    })
}

fn norm1(m: &DMatrix<C64>) -> f64 {
    m.column_iter().map(|c| c.iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max)
}

pub fn nsol_matrix(d: &DiscreteSpectrum, eps: Epsilon, xi: f64, eta: Direction, x: f64, t: f64, lam: C64) -> Result<[[C64; 2]; 2]> {
    solve_system(d, eps, xi, eta, x, t)?.matrix(lam)
}

/// N-soliton field q_sol(x, t), solved with a partition balanced for (x, t).
pub fn q_nsoliton(d: &DiscreteSpectrum, eps: Epsilon, x: f64, t: f64) -> Result<C64> {
    Ok(solve_partitioned(d, eps, &balanced_partition(d, x, t), x, t)?.q())
}

/// As [`q_nsoliton`] but with the cone partition (ξ, η).
pub fn q_nsoliton_with(d: &DiscreteSpectrum, eps: Epsilon, xi: f64, eta: Direction, x: f64, t: f64) -> Result<C64> {
    Ok(solve_system(d, eps, xi, eta, x, t)?.q())
}

/// q_sol at every x (parallel).
pub fn q_nsoliton_on(d: &DiscreteSpectrum, eps: Epsilon, xs: &[f64], t: f64) -> Result<Vec<C64>> {
    use rayon::prelude::*;
    xs.par_iter().map(|&x| q_nsoliton(d, eps, x, t)).collect()
}
