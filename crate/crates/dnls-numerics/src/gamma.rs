//! Complex Gamma function: Lanczos (g = 607/128, 15 terms) on Re z ≥ ½,
//! reflection below.

use crate::error::{NumericsError, Result};
use crate::C64;
use std::f64::consts::PI;

const G: f64 = 607.0 / 128.0;
const COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// log Γ(z) for Re z ≥ ½ (principal-ish branch, continuous in that half-plane).
fn ln_gamma_right(z: C64) -> C64 {
    let z = z - 1.0;
    let mut x = C64::new(COEF[0], 0.0);
    for (i, &ci) in COEF.iter().enumerate().skip(1) {
        x += ci / (z + i as f64);
    }
    let t = z + G + 0.5;
    (z + 0.5) * t.ln() - t + LN_SQRT_2PI + x.ln()
}

fn is_pole(z: C64) -> bool {
    z.re <= 0.5 && z.im.abs() < 1e-14 && (z.re - z.re.round()).abs() < 1e-14
}

/// Γ(z). Errors on (numerically) non-positive integers.
pub fn gamma_complex(z: C64) -> Result<C64> {
    if is_pole(z) {
        return Err(NumericsError::GammaPole { re: z.re, im: z.im });
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z).exp())
    } else {
        // Γ(z) Γ(1−z) = π / sin(πz)
        let s = (z * PI).sin();
        Ok(PI / (s * ln_gamma_right(1.0 - z).exp()))
    }
}

/// 1/Γ(z), entire; exactly representable zeros at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    if is_pole(z) {
        return C64::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        (-ln_gamma_right(z)).exp()
    } else {
        (z * PI).sin() * ln_gamma_right(1.0 - z).exp() / PI
    }
}

/// A logarithm of Γ(z) (any branch; `exp` of it is Γ(z)).
pub fn ln_gamma(z: C64) -> Result<C64> {
    if is_pole(z) {
        return Err(NumericsError::GammaPole { re: z.re, im: z.im });
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        Ok(C64::new(PI.ln(), 0.0) - (z * PI).sin().ln() - ln_gamma_right(1.0 - z))
    }
}
