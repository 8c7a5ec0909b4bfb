//! Parsers for the comma-separated flag values.

use crate::error::{CliError, Result};
use dnls_asymptotics::ConeWindow;
use dnls_family::FamilyParams;
use dnls_numerics::{Grid1D, C64};
use dnls_spectral::Epsilon;

pub fn floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| CliError::Args(format!("`{p}` in `{s}`: {e}"))))
        .collect()
}

fn exactly<const N: usize>(s: &str, what: &str) -> Result<[f64; N]> {
    let v = floats(s)?;
    v.try_into().map_err(|v: Vec<f64>| CliError::Args(format!("{what} needs {N} comma-separated numbers, got {}", v.len())))
}

/// `min,max,n`
pub fn grid(s: &str) -> Result<Grid1D> {
    let [a, b, n] = exactly::<3>(s, "grid")?;
    if n.fract() != 0.0 || n < 2.0 {
        return Err(CliError::Args(format!("grid size must be an integer ≥ 2, got {n}")));
    }
    Ok(Grid1D::new(a, b, n as usize)?)
}

/// `+1`, `1`, `-1`
pub fn epsilon(s: &str) -> Result<Epsilon> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(Epsilon::Plus),
        "-1" | "-" => Ok(Epsilon::Minus),
        other => Err(CliError::Args(format!("epsilon must be +1 or -1, got `{other}`"))),
    }
}

/// `v1,v2,x1,x2`
pub fn cone(s: &str) -> Result<ConeWindow> {
    let [v1, v2, x1, x2] = exactly::<4>(s, "cone")?;
    Ok(ConeWindow::new(v1, v2, x1, x2)?)
}

/// `nu,mu,delta,S0`
pub fn family(s: &str, eps: Epsilon) -> Result<FamilyParams> {
    let [nu, mu, delta, s0] = exactly::<4>(s, "family")?;
    Ok(FamilyParams::new(nu, mu, delta, s0, eps)?)
}

/// `re_lambda,im_lambda,re_C,im_C`
pub fn eigenpair(s: &str) -> Result<(C64, C64)> {
    let [a, b, c, d] = exactly::<4>(s, "soliton")?;
    Ok((C64::new(a, b), C64::new(c, d)))
}
