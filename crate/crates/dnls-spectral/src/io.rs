//! JSON for scattering data, CSV for potentials.

use crate::error::{Result, SpectralError};
use crate::types::{DiscreteSpectrum, Eigenpair, Epsilon, Potential, ReflectionCoefficient, ScatteringData};
use dnls_numerics::{ComplexGrid1D, C64};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;

#[derive(Serialize, Deserialize)]
struct RhoDoc {
    lam_min: f64,
    lam_max: f64,
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PairDoc {
    lambda: [f64; 2],
    #[serde(rename = "C")]
    c: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct ScatteringDoc {
    epsilon: Epsilon,
    rho: RhoDoc,
    discrete: Vec<PairDoc>,
}

impl ScatteringData {
    pub fn to_json(&self) -> Result<String> {
        let g = &self.rho.grid;
        let doc = ScatteringDoc {
            epsilon: self.epsilon,
            rho: RhoDoc {
                lam_min: g.x_min,
                lam_max: g.x_max,
                n: g.n(),
                re: g.values.iter().map(|v| v.re).collect(),
                im: g.values.iter().map(|v| v.im).collect(),
            },
            discrete: self
                .discrete
                .pairs()
                .iter()
                .map(|p| PairDoc { lambda: [p.lambda.re, p.lambda.im], c: [p.c.re, p.c.im] })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ScatteringDoc = serde_json::from_str(s)?;
        let r = doc.rho;
        if r.re.len() != r.n || r.im.len() != r.n {
            return Err(SpectralError::Format(format!("rho has n = {} but {} / {} samples", r.n, r.re.len(), r.im.len())));
        }
        let values = r.re.iter().zip(&r.im).map(|(&a, &b)| C64::new(a, b)).collect();
        let grid = ComplexGrid1D::new(r.lam_min, r.lam_max, values)?;
        let rho = ReflectionCoefficient::new(grid, doc.epsilon)?;
        let discrete = DiscreteSpectrum::new(
            doc.discrete
                .iter()
                .map(|p| Eigenpair { lambda: C64::new(p.lambda[0], p.lambda[1]), c: C64::new(p.c[0], p.c[1]) })
                .collect(),
        )?;
        ScatteringData::new(rho, discrete, doc.epsilon)
    }
}

pub fn read_scattering_json(path: impl AsRef<Path>) -> Result<ScatteringData> {
    ScatteringData::from_json(&std::fs::read_to_string(path)?)
}

pub fn write_scattering_json(path: impl AsRef<Path>, data: &ScatteringData) -> Result<()> {
    std::fs::write(path, data.to_json()?)?;
    Ok(())
}

/// Parses `x,re_q,im_q` rows (header required). Nodes must be uniformly spaced.
pub fn potential_from_csv(reader: impl Read, epsilon: Epsilon) -> Result<Potential> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let want = ["x", "re_q", "im_q"];
    if headers.len() < 3 || headers.iter().take(3).zip(want).any(|(h, w)| h != w) {
        return Err(SpectralError::Format(format!("expected header x,re_q,im_q, got {:?}", headers)));
    }
    let mut xs = Vec::new();
    let mut vals = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<f64> {
            rec.get(i)
                .ok_or_else(|| SpectralError::Format("short row".into()))?
                .parse::<f64>()
                .map_err(|e| SpectralError::Format(format!("bad number in column {i}: {e}")))
        };
        xs.push(num(0)?);
        vals.push(C64::new(num(1)?, num(2)?));
    }
    if xs.len() < 2 {
        return Err(SpectralError::Format("need at least two rows".into()));
    }
    let n = xs.len();
    let h = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    for (i, &x) in xs.iter().enumerate() {
        if (x - (xs[0] + i as f64 * h)).abs() > 1e-8 * (1.0 + h.abs() * n as f64) {
            return Err(SpectralError::Format(format!("x column is not uniformly spaced at row {i}")));
        }
    }
    Ok(Potential::new(ComplexGrid1D::new(xs[0], xs[n - 1], vals)?, epsilon))
}

/// Writes `x,re_q,im_q` with 17 significant digits.
pub fn potential_to_csv(p: &Potential, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "re_q", "im_q"])?;
    for (x, v) in p.grid.nodes().into_iter().zip(&p.grid.values) {
        w.write_record([format!("{x:.16e}"), format!("{:.16e}", v.re), format!("{:.16e}", v.im)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_potential_csv(path: impl AsRef<Path>, epsilon: Epsilon) -> Result<Potential> {
    potential_from_csv(std::fs::File::open(path)?, epsilon)
}

pub fn write_potential_csv(path: impl AsRef<Path>, p: &Potential) -> Result<()> {
    potential_to_csv(p, std::fs::File::create(path)?)
}
