//! The subcommands. Each writes its artifacts and a `report.json` into `--out`.

use crate::acceptance::{criteria_registry, loglog_slope, run_criterion};
use crate::args;
use crate::error::{CliError, Result};
use crate::report::{Metric, RunReport, Tolerance};
use clap::Args;
use dnls_asymptotics::{asymptotic_phases, q_asymptotic};
use dnls_direct::{integrator_registry, Direct};
use dnls_family::family_breve_a_lambda;
use dnls_inverse::{solver_registry, Inverse};
use dnls_numerics::{ComplexGrid1D, C64};
use dnls_pde::{stepper_registry, EvolutionConfig, Ist, Pde};
use dnls_solitons::q_nsoliton_on;
use dnls_spectral::{read_potential_csv, read_scattering_json, write_potential_csv, write_scattering_json, DiscreteSpectrum, Potential, ScatteringData};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// output directory (created if missing)
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// +1 or -1
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    pub eps: String,
}

fn prepare(c: &Common) -> Result<()> {
    std::fs::create_dir_all(&c.out)?;
    Ok(())
}

fn finish(mut report: RunReport, out: &Path) -> Result<RunReport> {
    let path = out.join("report.json");
    report.artifacts.push(path.display().to_string());
    std::fs::write(&path, report.to_json()? + "\n")?;
    Ok(report)
}

fn write_csv(path: &Path, header: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    let mut s = String::from(header);
    s.push('\n');
    for r in rows {
        let line: Vec<String> = r.iter().map(|v| format!("{v:.16e}")).collect();
        let _ = writeln!(s, "{}", line.join(","));
    }
    std::fs::write(path, s)?;
    Ok(())
}

// synth ─────────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub common: Common,
    /// eigenvalue and norming constant as re_λ,im_λ,re_C,im_C (repeatable)
    #[arg(long = "soliton", allow_hyphen_values = true)]
    pub solitons: Vec<String>,
    #[arg(long, default_value = "-30,30,4096", allow_hyphen_values = true)]
    pub grid: String,
    /// λ-grid stored with the (zero) reflection coefficient
    #[arg(long, default_value = "-40,40,4096", allow_hyphen_values = true)]
    pub lgrid: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
}

pub fn synth(a: &SynthArgs) -> Result<RunReport> {
    prepare(&a.common)?;
    let eps = args::epsilon(&a.common.eps)?;
    let g = args::grid(&a.grid)?;
    let pairs = a.solitons.iter().map(|s| args::eigenpair(s)).collect::<Result<Vec<_>>>()?;
    let d = DiscreteSpectrum::from_pairs(&pairs)?;
    let data = ScatteringData::reflectionless(d.clone(), eps, args::grid(&a.lgrid)?);
    let values = q_nsoliton_on(&d, eps, &g.nodes(), a.t)?;
    let q = Potential { grid: ComplexGrid1D::new(g.min, g.max, values)?, epsilon: eps };

    let mut r = RunReport::new("synth", &format!("{a:?}"));
    let (qp, dp) = (a.common.out.join("q_sol.csv"), a.common.out.join("data.json"));
    write_potential_csv(&qp, &q)?;
    // the data are those at t = 0; the CSV holds the field at t
    write_scattering_json(&dp, &data)?;
    r.artifacts.extend([qp.display().to_string(), dp.display().to_string()]);
    r.notes.push(format!("sup|q| = {:.17e}", q.grid.sup_norm()));
    finish(r, &a.common.out)
}

// scatter ───────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Args)]
pub struct ScatterArgs {
    #[command(flatten)]
    pub common: Common,
    /// potential CSV (x, re_q, im_q)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// sample the closed-form family member nu,mu,delta,S0 on --grid instead of reading --input
    #[arg(long, allow_hyphen_values = true)]
    pub family: Option<String>,
    #[arg(long, default_value = "-30,30,4096", allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, default_value = "-40,40,4096", allow_hyphen_values = true)]
    pub lgrid: String,
    /// Jost integrator (magnus4, rk4)
    #[arg(long)]
    pub integrator: Option<String>,
}

pub fn scatter(a: &ScatterArgs) -> Result<RunReport> {
    prepare(&a.common)?;
    let eps = args::epsilon(&a.common.eps)?;
    let fam = a.family.as_deref().map(|f| args::family(f, eps)).transpose()?;
    let q = match (&a.input, &fam) {
        (Some(p), _) => read_potential_csv(p, eps)?,
        (None, Some(f)) => dnls_family::family_potential(f, args::grid(&a.grid)?),
        (None, None) => return Err(CliError::Args("scatter needs --input or --family".into())),
    };
    let direct = Direct::with_integrator(integrator_registry().resolve(a.integrator.as_deref())?);
    let lg = args::grid(&a.lgrid)?;
    let data = direct.scatter(&q, lg, &Direct::default_region(&q))?;
    let (alpha, beta) = direct.transition(&q, lg)?;
    let e = eps.sign();
    let unitarity = lg.nodes().iter().enumerate().map(|(i, l)| (alpha.values[i].norm_sqr() - e * l * beta.values[i].norm_sqr() - 1.0).abs()).fold(0.0, f64::max);

    let mut r = RunReport::new("scatter", &format!("{a:?}"));
    r.metrics.push(Metric::below("unitarity_residual", unitarity, 1e-6));
    if let Some(f) = &fam {
        let mut worst: f64 = 0.0;
        for (i, l) in lg.nodes().into_iter().enumerate() {
            let exact = family_breve_a_lambda(C64::new(l, 0.0), f)?;
            worst = worst.max((alpha.values[i] - exact.conj()).norm());
        }
        r.metrics.push(Metric::below("alpha_vs_closed_form", worst, 1e-4));
    }
    for p in data.discrete.pairs() {
        r.notes.push(format!("eigenvalue {:.17e}{:+.17e}i, C = {:.17e}{:+.17e}i", p.lambda.re, p.lambda.im, p.c.re, p.c.im));
    }
    let path = a.common.out.join("data.json");
    write_scattering_json(&path, &data)?;
    r.artifacts.push(path.display().to_string());
    finish(r, &a.common.out)
}

// invert ────────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Args)]
pub struct InvertArgs {
    #[command(flatten)]
    pub common: Common,
    /// scattering data JSON
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "-10,10,201", allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    /// linear solver (auto, fixed-point, gmres)
    #[arg(long)]
    pub solver: Option<String>,
    /// potential CSV to compare against (interpolated onto --grid)
    #[arg(long)]
    pub reference: Option<PathBuf>,
}

pub fn invert(a: &InvertArgs) -> Result<RunReport> {
    prepare(&a.common)?;
    let data = read_scattering_json(&a.input)?;
    let inv = Inverse::with_solver(solver_registry().resolve(a.solver.as_deref())?);
    let g = args::grid(&a.grid)?;
    let out = inv.invert(&data, a.t, g)?;

    let mut r = RunReport::new("invert", &format!("{a:?}"));
    if let Some(m) = out.overlap_mismatch {
        r.metrics.push(Metric::below("overlap_mismatch", m, inv.overlap_warn));
    }
    r.metrics.push(Metric::below("max_residual", out.max_residual, inv.residual_tol));
    if let Some(p) = &a.reference {
        let reference = read_potential_csv(p, data.epsilon)?;
        let diff = g.nodes().iter().enumerate().map(|(i, &x)| (out.potential.grid.values[i] - reference.grid.interp(x)).norm()).fold(0.0, f64::max);
        r.metrics.push(Metric::below("sup_diff_vs_reference", diff, 1e-3));
    }
    let path = a.common.out.join("q.csv");
    write_potential_csv(&path, &out.potential)?;
    r.artifacts.push(path.display().to_string());
    finish(r, &a.common.out)
}

// evolve ────────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EvolveMode {
    Pde,
    Ist,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: Common,
    /// initial potential CSV
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// closed-form family member nu,mu,delta,S0 sampled on --grid instead of --input
    #[arg(long, allow_hyphen_values = true)]
    pub family: Option<String>,
    #[arg(long, default_value = "-40,40,2048", allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub dt: f64,
    /// PDE time stepper (ifrk4, ifrk2)
    #[arg(long)]
    pub stepper: Option<String>,
    #[arg(long, value_enum, default_value = "both")]
    pub mode: EvolveMode,
    /// x-grid of the IST reconstruction
    #[arg(long, default_value = "-10,10,81", allow_hyphen_values = true)]
    pub xgrid: String,
}

pub fn evolve(a: &EvolveArgs) -> Result<RunReport> {
    prepare(&a.common)?;
    let eps = args::epsilon(&a.common.eps)?;
    let q0 = match (&a.input, &a.family) {
        (Some(p), _) => read_potential_csv(p, eps)?,
        (None, Some(f)) => dnls_family::family_potential(&args::family(f, eps)?, args::grid(&a.grid)?),
        (None, None) => return Err(CliError::Args("evolve needs --input or --family".into())),
    };
    let mut r = RunReport::new("evolve", &format!("{a:?}"));
    let out = &a.common.out;
    let xg = args::grid(&a.xgrid)?;

    let pde = if a.mode != EvolveMode::Ist {
        let solver = Pde::with_stepper(stepper_registry().resolve(a.stepper.as_deref())?);
        let ev = solver.evolve(&q0, &EvolutionConfig::new(a.dt, a.t))?;
        r.metrics.push(Metric::below("mass_drift", ev.mass_drift(), 1e-8));
        let p = out.join("q_pde.csv");
        write_potential_csv(&p, &ev.state)?;
        let m = out.join("monitors.csv");
        write_csv(&m, "t,mass,max_abs", ev.monitors.iter().map(|s| vec![s.t, s.mass, s.max_abs]))?;
        r.artifacts.extend([p.display().to_string(), m.display().to_string()]);
        Some(ev.state)
    } else {
        None
    };
    let ist = if a.mode != EvolveMode::Pde {
        // the IST side needs the potential on the direct module's default box
        let q = Potential::new(q0.grid.resample(dnls_direct::default_x_grid()), eps);
        let res = Ist::default().evolve_on(&q, a.t, xg)?;
        let p = out.join("q_ist.csv");
        write_potential_csv(&p, &res)?;
        r.artifacts.push(p.display().to_string());
        Some(res)
    } else {
        None
    };
    if let (Some(p), Some(i)) = (&pde, &ist) {
        let d = xg.nodes().iter().enumerate().map(|(k, &x)| (i.grid.values[k] - p.grid.interp(x)).norm()).fold(0.0, f64::max);
        r.metrics.push(Metric::below("ist_vs_pde", d, 1e-3));
    }
    finish(r, out)
}

// asymptote ─────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Args)]
pub struct AsymptoteArgs {
    #[command(flatten)]
    pub common: Common,
    /// scattering data JSON (at t = 0)
    #[arg(long)]
    pub input: PathBuf,
    /// v1,v2,x1,x2
    #[arg(long, allow_hyphen_values = true)]
    pub cone: String,
    /// comma-separated times
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    /// sample points per time across the cone
    #[arg(long, default_value_t = 11)]
    pub nx: usize,
    /// compare with the exact solution at each sample (closed form when reflectionless,
    /// the inverse map otherwise) and fit the error trend
    #[arg(long)]
    pub reference: bool,
}

pub fn asymptote(a: &AsymptoteArgs) -> Result<RunReport> {
    prepare(&a.common)?;
    let data = read_scattering_json(&a.input)?;
    let w = args::cone(&a.cone)?;
    let ts = args::floats(&a.t)?;
    if a.nx == 0 {
        return Err(CliError::Args("--nx must be ≥ 1".into()));
    }
    let mut r = RunReport::new("asymptote", &format!("{a:?}"));
    let mut rows = Vec::new();
    let mut errs = Vec::new();
    for &t in &ts {
        let (lo, hi) = w.x_range(t);
        let xs: Vec<f64> = if a.nx == 1 { vec![w.center(t)] } else { (0..a.nx).map(|i| lo + (hi - lo) * i as f64 / (a.nx - 1) as f64).collect() };
        let exact = if !a.reference {
            Vec::new()
        } else if data.rho.is_zero() {
            q_nsoliton_on(&data.discrete, data.epsilon, &xs, t)?
        } else if xs.len() == 1 {
            dnls_inverse::invert(&data, t, dnls_numerics::Grid1D::new(xs[0], xs[0] + 1e-3, 2)?)?.grid.values[..1].to_vec()
        } else {
            dnls_inverse::invert(&data, t, dnls_numerics::Grid1D::new(lo, hi, xs.len())?)?.grid.values
        };
        let mut worst: f64 = 0.0;
        for (i, &x) in xs.iter().enumerate() {
            let (q, parts) = q_asymptotic(&data, &w, x, t)?;
            let mut row = vec![t, x, q.re, q.im, parts.q_sol.re, parts.q_sol.im];
            if let Some(e) = exact.get(i) {
                row.extend([e.re, e.im]);
                worst = worst.max((q - e).norm());
            }
            rows.push(row);
        }
        if a.reference {
            r.metrics.push(Metric::info(format!("sup_error(t={t})"), worst));
            errs.push(worst);
        }
    }
    if a.reference && data.rho.is_zero() {
        // no radiation: the prediction should be exact up to exponentially small terms
        r.metrics.push(Metric::below("sup_error", errs.iter().copied().fold(0.0, f64::max), 1e-6));
    } else if a.reference && ts.len() >= 2 {
        r.metrics.push(Metric::new("error_trend_slope", loglog_slope(&ts, &errs), Tolerance::Band([-1.0, -0.5])));
    }
    let header = if a.reference { "t,x,re_q,im_q,re_q_sol,im_q_sol,re_q_ref,im_q_ref" } else { "t,x,re_q,im_q,re_q_sol,im_q_sol" };
    let p = a.common.out.join("prediction.csv");
    write_csv(&p, header, rows)?;
    r.artifacts.push(p.display().to_string());

    if !data.discrete.is_empty() {
        let mut phases = Vec::new();
        for (k, pr) in data.discrete.pairs().iter().enumerate() {
            match asymptotic_phases(&data.discrete, &data.rho, k) {
                Ok(s) => phases.push(vec![pr.lambda.re, pr.lambda.im, s.x_plus, s.x_minus, s.alpha_plus, s.alpha_minus]),
                Err(e) => r.notes.push(format!("no phase shifts for soliton {k}: {e}")),
            }
        }
        let p = a.common.out.join("phases.csv");
        write_csv(&p, "re_lambda,im_lambda,x_plus,x_minus,alpha_plus,alpha_minus", phases)?;
        r.artifacts.push(p.display().to_string());
    }
    finish(r, &a.common.out)
}

// validate ──────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// comma-separated subset, e.g. c01,c04 (default: all)
    #[arg(long)]
    pub only: Option<String>,
}

/// Runs the acceptance criteria, printing one line per criterion.
pub fn validate(a: &ValidateArgs) -> Result<RunReport> {
    std::fs::create_dir_all(&a.out)?;
    let reg = criteria_registry();
    let names = match &a.only {
        Some(s) => s.split(',').map(|n| n.trim().to_string()).collect(),
        None => reg.names(),
    };
    let mut r = RunReport::new("validate", &names.join(","));
    for n in &names {
        let o = run_criterion(reg.get(n)?.as_ref());
        println!("{}", o.line());
        for m in &o.metrics {
            r.metrics.push(Metric { name: format!("{n}: {}", m.name), ..m.clone() });
        }
        if let Some(e) = &o.error {
            r.notes.push(format!("{n}: {e}"));
            r.metrics.push(Metric::below(format!("{n}: completed"), 1.0, 0.5));
        }
    }
    finish(r, &a.out)
}
