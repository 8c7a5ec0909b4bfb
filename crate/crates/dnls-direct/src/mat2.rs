use dnls_numerics::C64;
use std::ops::{Add, Mul, Sub};

/// 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct M2(pub [[C64; 2]; 2]);

const Z: C64 = C64::new(0.0, 0.0);
const O: C64 = C64::new(1.0, 0.0);

impl M2 {
    pub const IDENTITY: M2 = M2([[O, Z], [Z, O]]);
    pub const ZERO: M2 = M2([[Z, Z], [Z, Z]]);

    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        M2([[a, b], [c, d]])
    }
    #[inline]
    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }
    #[inline]
    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }
    #[inline]
    pub fn scale(&self, s: C64) -> Self {
        let m = &self.0;
        M2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }
    #[inline]
    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }
    /// Inverse of a unimodular-ish matrix via the adjugate.
    pub fn inverse(&self) -> Self {
        let m = &self.0;
        let d = self.det();
        M2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
    }
    pub fn commutator(a: &M2, b: &M2) -> M2 {
        *a * *b - *b * *a
    }
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }
    pub fn col(&self, j: usize) -> [C64; 2] {
        [self.0[0][j], self.0[1][j]]
    }
    pub fn from_cols(a: [C64; 2], b: [C64; 2]) -> Self {
        M2([[a[0], b[0]], [a[1], b[1]]])
    }

    /// exp(B) in closed form: e^{tr/2}(cosh κ I + sinh κ/κ (B − tr/2 I)), κ² = −det(B − tr/2 I).
    pub fn expm(&self) -> Self {
        let half_tr = self.trace() * 0.5;
        let b = *self - M2::IDENTITY.scale(half_tr);
        let k2 = -b.det();
        let (ch, shc) = if k2.norm() < 1e-6 {
            // series in κ²
            (O + k2 / 2.0 + k2 * k2 / 24.0 + k2 * k2 * k2 / 720.0, O + k2 / 6.0 + k2 * k2 / 120.0 + k2 * k2 * k2 / 5040.0)
        } else {
            let k = k2.sqrt();
            (k.cosh(), k.sinh() / k)
        };
        let e = half_tr.exp();
        (M2::IDENTITY.scale(ch) + b.scale(shc)).scale(e)
    }
}

impl Add for M2 {
    type Output = M2;
    fn add(self, o: M2) -> M2 {
        let (a, b) = (&self.0, &o.0);
        M2([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }
}

impl Sub for M2 {
    type Output = M2;
    fn sub(self, o: M2) -> M2 {
        let (a, b) = (&self.0, &o.0);
        M2([[a[0][0] - b[0][0], a[0][1] - b[0][1]], [a[1][0] - b[1][0], a[1][1] - b[1][1]]])
    }
}

impl Mul for M2 {
    type Output = M2;
    fn mul(self, o: M2) -> M2 {
        let (a, b) = (&self.0, &o.0);
        M2([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }
}
