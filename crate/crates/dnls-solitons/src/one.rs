use dnls_numerics::C64;
use dnls_spectral::Epsilon;
use std::f64::consts::FRAC_PI_2;

/// Parameters of a single soliton in travelling-wave form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneSoliton {
    pub lambda: C64,
    /// Centre at t = 0.
    pub x0: f64,
    /// Phase offset.
    pub alpha0: f64,
}

impl OneSoliton {
    pub fn from_data(lambda: C64, c: C64) -> Self {
        let v = lambda.im;
        let x0 = (lambda.norm() * c.norm_sqr() / (4.0 * v * v)).ln() / (4.0 * v);
        let alpha0 = lambda.arg() + c.arg() + FRAC_PI_2;
        Self { lambda, x0, alpha0 }
    }

    /// Envelope φ(y).
    pub fn envelope(&self, eps: Epsilon, y: f64) -> f64 {
        let (u, v) = (self.lambda.re, self.lambda.im);
        let arg = 4.0 * v * y;
        // cosh overflows long before φ underflows to anything meaningful
        if arg.abs() > 700.0 {
            return 0.0;
        }
        (8.0 * v * v / (self.lambda.norm() * arg.cosh() - eps.sign() * u)).sqrt()
    }

    /// ∫_{−∞}^{y} φ².
    pub fn mass_to(&self, eps: Epsilon, y: f64) -> f64 {
        let a = self.lambda.norm();
        let su = eps.sign() * self.lambda.re;
        let k = ((a + su) / (a - su)).sqrt();
        4.0 * ((k * (2.0 * self.lambda.im * y).tanh()).atan() + k.atan())
    }

    pub fn eval(&self, eps: Epsilon, x: f64, t: f64) -> C64 {
        let (u, v) = (self.lambda.re, self.lambda.im);
        let y = x - self.x0 + 4.0 * u * t;
        let phase = 4.0 * (u * u + v * v) * t - 2.0 * u * (x + 4.0 * u * t) - eps.sign() / 4.0 * self.mass_to(eps, y) - self.alpha0;
        C64::from_polar(self.envelope(eps, y), phase)
    }

    /// Total mass ∫φ²: 8 atan k.
    pub fn mass(&self, eps: Epsilon) -> f64 {
        self.mass_to(eps, f64::INFINITY)
    }
}

/// Closed-form single soliton with data (λ, C) at (x, t). Requires Im λ > 0.
pub fn one_soliton(lam: C64, c: C64, eps: Epsilon, x: f64, t: f64) -> C64 {
    OneSoliton::from_data(lam, c).eval(eps, x, t)
}
