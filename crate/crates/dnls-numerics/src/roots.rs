//! Zeros of an analytic function in a rectangle: quadtree subdivision driven by
//! argument-principle counts, then Newton polishing.

use crate::error::{NumericsError, Result};
use crate::C64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub max_depth: usize,
    pub newton_tol: f64,
}

impl SearchRegion {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let r = Self { re_min, re_max, im_min, im_max, max_depth: 10, newton_tol: 1e-12 };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.re_min < self.re_max && self.im_min < self.im_max) {
            return Err(NumericsError::InvalidRegion(format!(
                "[{}, {}]×[{}, {}] is empty",
                self.re_min, self.re_max, self.im_min, self.im_max
            )));
        }
        if !(self.newton_tol > 0.0) {
            return Err(NumericsError::InvalidRegion("newton_tol must be positive".into()));
        }
        Ok(())
    }

    fn rect(&self) -> Rect {
        Rect { x0: self.re_min, x1: self.re_max, y0: self.im_min, y1: self.im_max }
    }
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Rect {
    fn contains(&self, z: C64) -> bool {
        z.re >= self.x0 && z.re <= self.x1 && z.im >= self.y0 && z.im <= self.y1
    }
    fn center(&self) -> C64 {
        C64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }
    fn diam(&self) -> f64 {
        (self.x1 - self.x0).hypot(self.y1 - self.y0)
    }
    /// Four children, split slightly off-centre (shifted by `t`) so that
    /// symmetric zeros do not land on the cut lines.
    fn split(&self, t: f64) -> [Rect; 4] {
        let xm = self.x0 + (0.5 + t) * (self.x1 - self.x0);
        let ym = self.y0 + (0.5 - 0.7 * t) * (self.y1 - self.y0);
        [
            Rect { x0: self.x0, x1: xm, y0: self.y0, y1: ym },
            Rect { x0: xm, x1: self.x1, y0: self.y0, y1: ym },
            Rect { x0: self.x0, x1: xm, y0: ym, y1: self.y1 },
            Rect { x0: xm, x1: self.x1, y0: ym, y1: self.y1 },
        ]
    }
}

const BOUNDARY_FLOOR: f64 = 1e-12;
const MAX_ARG_STEP: f64 = 0.5;
const NEWTON_ITERS: usize = 50;

/// Accumulates Δarg f and Σ z·Δlog f along a boundary segment, bisecting
/// until consecutive samples differ in phase by less than `MAX_ARG_STEP`.
struct Walk<'a> {
    f: &'a dyn Fn(C64) -> C64,
    darg: f64,
    moment: C64,
}

impl Walk<'_> {
    fn eval(&self, z: C64) -> Result<C64> {
        let v = (self.f)(z);
        if !(v.norm() >= BOUNDARY_FLOOR) {
            return Err(NumericsError::BoundaryZero { re: z.re, im: z.im, value: v.norm() });
        }
        Ok(v)
    }

    fn segment(&mut self, a: C64, fa: C64, b: C64, fb: C64, depth: u32) -> Result<()> {
        let dlog = (fb / fa).ln();
        if dlog.im.abs() > MAX_ARG_STEP && depth < 40 && (b - a).norm() > 1e-13 {
            let m = (a + b) * 0.5;
            let fm = self.eval(m)?;
            self.segment(a, fa, m, fm, depth + 1)?;
            return self.segment(m, fm, b, fb, depth + 1);
        }
        self.darg += dlog.im;
        self.moment += (a + b) * 0.5 * dlog;
        Ok(())
    }
}

/// (winding number, first moment Σ z_k over the enclosed zeros).
fn winding(f: &dyn Fn(C64) -> C64, r: &Rect) -> Result<(i64, C64)> {
    let corners = [
        C64::new(r.x0, r.y0),
        C64::new(r.x1, r.y0),
        C64::new(r.x1, r.y1),
        C64::new(r.x0, r.y1),
    ];
    let mut w = Walk { f, darg: 0.0, moment: C64::new(0.0, 0.0) };
    const PER_EDGE: usize = 16;
    let mut prev = corners[0];
    let mut fprev = w.eval(prev)?;
    for e in 0..4 {
        let (a, b) = (corners[e], corners[(e + 1) % 4]);
        for k in 1..=PER_EDGE {
            let z = a + (b - a) * (k as f64 / PER_EDGE as f64);
            let fz = w.eval(z)?;
            w.segment(prev, fprev, z, fz, 0)?;
            prev = z;
            fprev = fz;
        }
    }
    let count = (w.darg / (2.0 * PI)).round() as i64;
    Ok((count, w.moment / C64::new(0.0, 2.0 * PI)))
}

fn newton(f: &dyn Fn(C64) -> C64, z0: C64, tol: f64) -> Result<C64> {
    let mut z = z0;
    let mut fz = f(z);
    for _ in 0..NEWTON_ITERS {
        if fz.norm() < tol {
            return Ok(z);
        }
        let d = 1e-6 * z.norm().max(1.0);
        let df = (f(z + d) - f(z - d)) / (2.0 * d);
        if df.norm() == 0.0 || !df.re.is_finite() {
            break;
        }
        let step = fz / df;
        // Damp until the residual does not grow.
        let mut lam = 1.0;
        let mut znew = z - step;
        let mut fnew = f(znew);
        while fnew.norm() > fz.norm() && lam > 1e-4 {
            lam *= 0.5;
            znew = z - step * lam;
            fnew = f(znew);
        }
        z = znew;
        fz = fnew;
    }
    if fz.norm() < tol {
        return Ok(z);
    }
    Err(NumericsError::NewtonFailed { re: z.re, im: z.im, residual: fz.norm() })
}

/// All zeros of `f` inside `region`, Newton-polished to |f| < `newton_tol`.
pub fn find_zeros(f: &dyn Fn(C64) -> C64, region: &SearchRegion) -> Result<Vec<C64>> {
    region.validate()?;
    let root = region.rect();
    let (total, moment) = winding(f, &root)?;
    let mut out = Vec::new();
    if total != 0 {
        search(f, region, root, total, moment, 0, &mut out)?;
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

fn search(
    f: &dyn Fn(C64) -> C64,
    region: &SearchRegion,
    r: Rect,
    count: i64,
    moment: C64,
    depth: usize,
    out: &mut Vec<C64>,
) -> Result<()> {
    if count <= 0 {
        return Ok(());
    }
    if count == 1 {
        // The moment is the zero itself up to quadrature error; a centre start is the fallback.
        let start = if r.contains(moment) { moment } else { r.center() };
        if let Ok(z) = newton(f, start, region.newton_tol) {
            if r.contains(z) {
                out.push(z);
                return Ok(());
            }
        }
        if depth >= region.max_depth || r.diam() < 1e-10 {
            let z = newton(f, r.center(), region.newton_tol)?;
            out.push(z);
            return Ok(());
        }
    } else if depth >= region.max_depth || r.diam() < 1e-10 {
        return Err(NumericsError::UnresolvedCluster { count, depth });
    }

    // Subdivide; if a cut passes through a zero, shift it and retry.
    let mut last_err = None;
    for &t in &[0.0173, -0.0291, 0.0437, -0.0611] {
        let kids = r.split(t);
        let counted: Result<Vec<(i64, C64)>> = kids.iter().map(|k| winding(f, k)).collect();
        match counted {
            Ok(ws) => {
                let before = out.len();
                for (k, (c, m)) in kids.iter().zip(ws) {
                    search(f, region, *k, c, m, depth + 1, out)?;
                }
                let found = (out.len() - before) as i64;
                if found != count {
                    // Sub-counts must add up to the parent count.
                    out.truncate(before);
                    last_err = Some(NumericsError::UnresolvedCluster { count, depth });
                    continue;
                }
                return Ok(());
            }
            Err(e @ NumericsError::BoundaryZero { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or(NumericsError::UnresolvedCluster { count, depth }))
}
