use dnls_numerics::{gamma_complex, ln_gamma, rgamma, tanh_sinh, ComplexGrid1D, Grid1D, NumericsError, C64, I};
use dnls_spectral::{DiscreteSpectrum, Epsilon, Potential, ReflectionCoefficient, ScatteringData, SpectralError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    Params(String),
    #[error("ᾰ vanishes at λ = {0} on the real line (spectral singularity)")]
    SpectralSingularity(f64),
    #[error("ζ = 0 is excluded")]
    ZeroZeta,
    #[error("family has {0} eigenvalue(s); only soliton-free members give closed-form data")]
    NonEmptySpectrum(usize),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

pub type Result<T> = std::result::Result<T, FamilyError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    pub nu: f64,
    pub mu: f64,
    pub delta: f64,
    pub s0: f64,
    pub eps: Epsilon,
}

impl FamilyParams {
    pub fn new(nu: f64, mu: f64, delta: f64, s0: f64, eps: Epsilon) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(FamilyError::Params(format!("ν = {nu} must be positive")));
        }
        if ![mu, delta, s0].iter().all(|v| v.is_finite()) {
            return Err(FamilyError::Params("μ, δ, S₀ must be finite".into()));
        }
        Ok(Self { nu, mu, delta, s0, eps })
    }

    /// −εδ < μ²/ν²: sufficient for an empty discrete spectrum.
    ///
    /// The eigenvalue condition (z + iL_n)² = μ² + εν²(z + δ), z = λ − δ, L_n = n − ½,
    /// has no solutions with Im z > 0 when this holds.
    pub fn certified_empty(&self) -> bool {
        -self.eps.sign() * self.delta < (self.mu / self.nu).powi(2)
    }

    /// Hypergeometric parameters at λ = ζ²: (α, β, γ), α + β = 2iμ, αβ = εν²λ.
    ///
    /// ᾰ and b are symmetric in α ↔ β, so the choice of square root is immaterial.
    pub fn hypergeometric(&self, lam: C64) -> (C64, C64, C64) {
        let x = (C64::new(-self.mu * self.mu, 0.0) - self.eps.sign() * self.nu * self.nu * lam).sqrt();
        let im = C64::new(0.0, self.mu);
        let g = -I * lam + I * (self.mu + self.delta) + 0.5;
        (im + x, im - x, g)
    }
}

fn sech(x: f64) -> f64 {
    if x.abs() > 700.0 {
        0.0
    } else {
        1.0 / x.cosh()
    }
}

/// ν sech(x)^{1−2iμ} e^{i(S₀ − εν² tanh x − 2δx)}.
pub fn family_value(p: &FamilyParams, x: f64) -> C64 {
    let s = sech(x);
    if s == 0.0 {
        return C64::new(0.0, 0.0);
    }
    // sech^{−2iμ} = e^{−2iμ log sech}
    let phase = -2.0 * p.mu * s.ln() + p.s0 - p.eps.sign() * p.nu * p.nu * x.tanh() - 2.0 * p.delta * x;
    p.nu * s * (I * phase).exp()
}

pub fn family_potential(p: &FamilyParams, x_grid: Grid1D) -> Potential {
    Potential::new(x_grid.sample(|x| family_value(p, x)), p.eps)
}

/// ∏Γ(num)/∏Γ(den) in log form (the individual factors overflow for large |λ|).
fn gamma_ratio(num: &[C64], den: &[C64]) -> Result<C64> {
    for &z in num {
        gamma_complex(z)?;
    }
    if den.iter().any(|&z| rgamma(z) == C64::new(0.0, 0.0)) {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut l = C64::new(0.0, 0.0);
    for &z in num {
        l += ln_gamma(z)?;
    }
    for &z in den {
        l -= ln_gamma(z)?;
    }
    Ok(l.exp())
}

/// ᾰ as a function of λ = ζ².
pub fn family_breve_a_lambda(lam: C64, p: &FamilyParams) -> Result<C64> {
    let (a, b, g) = p.hypergeometric(lam);
    let pre = C64::new(0.0, -p.eps.sign() * p.nu * p.nu).exp();
    Ok(pre * gamma_ratio(&[g, g - a - b], &[g - a, g - b])?)
}

pub fn family_breve_a(zeta: C64, p: &FamilyParams) -> Result<C64> {
    family_breve_a_lambda(zeta * zeta, p)
}

fn two_pow_2imu(p: &FamilyParams) -> C64 {
    (C64::new(0.0, 2.0 * p.mu) * std::f64::consts::LN_2).exp()
}

/// b(ζ) = −(2^{2iμ}/(νζ)) e^{−iS₀} Γ(γ)Γ(1+α+β−γ)/(Γ(α)Γ(β)).
pub fn family_b(zeta: C64, p: &FamilyParams) -> Result<C64> {
    if zeta == C64::new(0.0, 0.0) {
        return Err(FamilyError::ZeroZeta);
    }
    let (a, b, g) = p.hypergeometric(zeta * zeta);
    let pre = -two_pow_2imu(p) / (p.nu * zeta) * C64::new(0.0, -p.s0).exp();
    Ok(pre * gamma_ratio(&[g, 1.0 + a + b - g], &[a, b])?)
}

/// b(ζ)/ζ as a function of λ, using 1/(Γ(α)Γ(β)) = αβ/(Γ(α+1)Γ(β+1)), αβ = εν²λ;
/// regular at λ = 0.
pub fn family_b_over_zeta(lam: C64, p: &FamilyParams) -> Result<C64> {
    let (a, b, g) = p.hypergeometric(lam);
    let pre = -two_pow_2imu(p) * p.eps.sign() * p.nu * C64::new(0.0, -p.s0).exp();
    Ok(pre * gamma_ratio(&[g, 1.0 + a + b - g], &[a + 1.0, b + 1.0])?)
}

/// ρ(λ) = ε ζ⁻¹ conj(b(ζ̄))/conj(ᾰ(ζ̄)), ζ = √λ; equals ε conj(b/ζ)/conj(ᾰ) on the real line.
pub fn family_rho(lam: f64, p: &FamilyParams) -> Result<C64> {
    let l = C64::new(lam, 0.0);
    let a = family_breve_a_lambda(l, p)?;
    if a == C64::new(0.0, 0.0) {
        return Err(FamilyError::SpectralSingularity(lam));
    }
    Ok(p.eps.sign() * family_b_over_zeta(l, p)?.conj() / a.conj())
}

/// Real λ where ᾰ vanishes. On the line γ − α = −i(λ − δ) + ½ − X with
/// X² = −μ² − εν²λ, so a zero needs λ = δ and X(δ) = n − ½ for some n ≥ 1.
pub fn spectral_singularity(p: &FamilyParams) -> Option<f64> {
    let x2 = -p.mu * p.mu - p.eps.sign() * p.nu * p.nu * p.delta;
    if x2 < 0.0 {
        return None;
    }
    let k = x2.sqrt() - 0.5;
    (k > -1e-12 && (k - k.round()).abs() < 1e-12).then_some(p.delta)
}

/// ρ sampled on `lam_grid`.
pub fn family_reflection(p: &FamilyParams, lam_grid: Grid1D) -> Result<ReflectionCoefficient> {
    let values = lam_grid.nodes().iter().map(|&l| family_rho(l, p)).collect::<Result<Vec<_>>>()?;
    Ok(ReflectionCoefficient::new(ComplexGrid1D::new(lam_grid.min, lam_grid.max, values)?, p.eps)?)
}

/// Exact scattering data of a soliton-free member without spectral singularity.
pub fn family_scattering(p: &FamilyParams, lam_grid: Grid1D) -> Result<ScatteringData> {
    if let Some(l) = spectral_singularity(p) {
        return Err(FamilyError::SpectralSingularity(l));
    }
    let cert = empty_spectrum_certificate(p, DEFAULT_N_MAX);
    if !cert.search_result.is_empty() {
        return Err(FamilyError::NonEmptySpectrum(cert.search_result.len()));
    }
    Ok(ScatteringData::new(family_reflection(p, lam_grid)?, DiscreteSpectrum::empty(), p.eps)?)
}

/// ∫ log(1 − ελ|ρ|²)/λ dλ over [−cutoff, cutoff] from the closed form.
///
/// Uses 1 − ελ|ρ|² = |ᾰ|⁻², so the integrand −2 log|ᾰ|/λ stays finite up to a
/// spectral singularity, where it has an integrable log singularity. The range is
/// split at 0 and at the singularity and each piece done by tanh–sinh.
pub fn log_defect_integral(p: &FamilyParams, cutoff: f64) -> Result<f64> {
    // L/λ → −ε|ρ(0)|² at the origin
    let at0 = family_rho(0.0, p).map(|r| -p.eps.sign() * r.norm_sqr()).unwrap_or(f64::NAN);
    let f = |l: f64| {
        if l.abs() < 1e-7 {
            return at0;
        }
        match family_breve_a_lambda(C64::new(l, 0.0), p) {
            // a node that rounds onto the zero itself carries a weight below 1e-15
            Ok(a) if a.norm() == 0.0 => 0.0,
            Ok(a) => -2.0 * a.norm().ln() / l,
            Err(_) => f64::NAN,
        }
    };
    let mut cuts = vec![-cutoff, 0.0, cutoff];
    if let Some(s) = spectral_singularity(p) {
        cuts.push(s);
    }
    cuts.sort_by(f64::total_cmp);
    let v: f64 = cuts.windows(2).map(|w| tanh_sinh(f, w[0], w[1], 1.0 / 64.0)).sum();
    if !v.is_finite() {
        return Err(FamilyError::Params(format!("log-defect integral diverged (cutoff {cutoff})")));
    }
    Ok(v)
}

pub const DEFAULT_N_MAX: usize = 20;

#[derive(Debug, Clone)]
pub struct Certificate {
    /// The sufficient condition −εδ < μ²/ν².
    pub certified_empty: bool,
    /// Eigenvalues λ = ζ² (Im λ > 0) found by the search, n = 1..n_max.
    pub search_result: Vec<C64>,
    /// Largest |ᾰ| at the reported roots (should be ~0).
    pub max_residual: f64,
    /// Real zero of ᾰ, if any.
    pub spectral_singularity: Option<f64>,
}

/// Zeros of ᾰ in ζ ∈ C⁺⁺ occur where γ − α or γ − β equals 1 − n. With
/// w = γ − iμ − 1 + n = −i(λ − δ) + n − ½ this is w² = (α − β)²/4 = −μ² − εν²λ,
/// a quadratic in w for each n; its roots with Im λ > 0 are exactly the eigenvalues
/// (the numerator Γ(γ)Γ(γ − α − β) has no poles there since Re γ > ½).
pub fn empty_spectrum_certificate(p: &FamilyParams, n_max: usize) -> Certificate {
    let e = p.eps.sign();
    let nu2 = p.nu * p.nu;
    let mut roots = Vec::new();
    let mut max_residual: f64 = 0.0;
    for n in 1..=n_max {
        let ln = n as f64 - 0.5;
        // λ = δ + i(w − L_n):  w² + iεν² w + μ² + εν²δ − iεν²L_n = 0
        let bq = C64::new(0.0, e * nu2);
        let cq = C64::new(p.mu * p.mu + e * nu2 * p.delta, -e * nu2 * ln);
        let disc = (bq * bq - 4.0 * cq).sqrt();
        for w in [(-bq + disc) / 2.0, (-bq - disc) / 2.0] {
            let lam = p.delta + I * (w - ln);
            if !(lam.im > 1e-12) {
                continue;
            }
            if roots.iter().any(|r: &C64| (r - lam).norm() < 1e-10) {
                continue;
            }
            if let Ok(a) = family_breve_a_lambda(lam, p) {
                max_residual = max_residual.max(a.norm());
            }
            roots.push(lam);
        }
    }
    Certificate { certified_empty: p.certified_empty(), search_result: roots, max_residual, spectral_singularity: spectral_singularity(p) }
}
