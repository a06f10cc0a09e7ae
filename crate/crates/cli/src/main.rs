//! Command-line front end: catalog listing, operator evaluation, order
//! estimation, trajectory runs, distortion and criteria verification, and
//! CSV/JSON export for plotting.
//!
//! Exit codes: 0 = all checks pass, 1 = check failures (with witnesses),
//! 2 = usage/config error, 3 = numerical singularity abort.

mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use harmap::order::{self, ExtremumKind};
use harmap::{catalog, criteria, geometry, operators};

use config::RunConfig;
use output::{fmt_f64, OutputTarget};

#[derive(Parser)]
#[command(
    name = "harmap",
    version,
    about = "Differential operators and linear-invariance orders of planar harmonic mappings on the unit disk"
)]
struct Cli {
    /// Flat JSON config file; command-line flags override its values.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    /// Catalog map name, or path to a JSON map descriptor
    /// ({"catalog": ..., "params": {...}} or {"taylor": {"h": [[re,im],...], "g": [...]}}).
    #[arg(long, global = true)]
    map: Option<String>,

    /// Inline JSON object with catalog parameters, e.g. '{"n": 2}' or
    /// '{"alpha": 1.5, "omega0": [0.2, 0]}'.
    #[arg(long, global = true)]
    params: Option<String>,

    /// Radial grid count M.
    #[arg(long = "grid-M", global = true)]
    grid_m: Option<usize>,

    /// Angular grid count N.
    #[arg(long = "grid-N", global = true)]
    grid_n: Option<u32>,

    /// Dyadic boundary depth K (radii 1 - 2^-k).
    #[arg(long = "grid-K", global = true)]
    grid_k: Option<u32>,

    /// Refinement iterations R.
    #[arg(long = "grid-R", global = true)]
    grid_r: Option<usize>,

    /// ODE tolerance for trajectory integration.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Report tolerance for pass/fail margins.
    #[arg(long = "report-tol", global = true)]
    report_tol: Option<f64>,

    /// Seed for sampled pair generation (fixed seed => byte-identical output).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Output format for tabular results.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker-thread cap; HARMAP_THREADS caps it further.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderKind {
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionName {
    Shc,
    ShcOrderBound,
    ConcaveFamily,
    StableConcaveMu,
    Nh,
    MuSqrt,
}

#[derive(Subcommand)]
enum Cmd {
    /// List catalog maps, parameter schemas, and known exact order values.
    Catalog,
    /// Evaluate P, A, |A|, S, J and the dilatation at given points.
    Eval {
        /// Semicolon-separated points "re,im;re,im;...".
        #[arg(long)]
        points: String,
    },
    /// Estimate the lower order inf |A| or upper order sup |A| (JSON output).
    Order {
        #[arg(long, value_enum)]
        kind: OrderKind,
    },
    /// Integrate the level-set trajectory through z0 toward t-end.
    Trajectory {
        /// Start point "re,im".
        #[arg(long)]
        z0: String,
        #[arg(long = "t-end")]
        t_end: f64,
    },
    /// Verify the two-sided distortion bound on seeded random pairs.
    Distortion {
        /// Operator bound alpha (must dominate sup |A_f|).
        #[arg(long)]
        alpha: f64,
        /// Number of random pairs.
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
    },
    /// Run a sampled criterion check (JSON report).
    Criteria {
        #[arg(long, value_enum)]
        criterion: CriterionName,
        /// Lambda for the NH / mu-sqrt criteria, in (0, 1].
        #[arg(long)]
        lambda: Option<f64>,
        /// Opening-angle parameter for the concave-family criteria, in [1, 2].
        #[arg(long)]
        alpha: Option<f64>,
        /// Number of unit-circle lambda samples for the slice criteria.
        #[arg(long, default_value_t = 64)]
        lambda_count: usize,
    },
    /// Export the |A| and Jacobian grid as CSV.
    GridExport,
}

/// Failure with a process exit code attached.
struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<u8, Failure>;

fn usage_err(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn from_core(err: harmap::Error) -> Failure {
    use harmap::Error::*;
    let code = match err {
        UnknownCatalog { .. } | InvalidParam { .. } | BadDescriptor { .. }
        | ShortTaylor { .. } => 2,
        Domain { .. } | VanishingDerivative { .. } | DilatationNearUnit { .. }
        | NonPositiveJacobian { .. } | StencilOutsideDisk { .. }
        | TrajectoryFieldUndefined { .. } => 3,
    };
    Failure { code, message: err.to_string() }
}

fn parse_point(text: &str) -> Result<Complex64, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(usage_err(format!("point '{text}' is not of the form re,im")));
    }
    let re: f64 = parts[0].parse().map_err(|e| usage_err(format!("bad point '{text}': {e}")))?;
    let im: f64 = parts[1].parse().map_err(|e| usage_err(format!("bad point '{text}': {e}")))?;
    Ok(Complex64::new(re, im))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::assemble(&cli) {
        Ok(cfg) => cfg,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    cfg.apply_thread_cap();
    match run(&cli.cmd, &cfg) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: &Cmd, cfg: &RunConfig) -> CmdResult {
    match cmd {
        Cmd::Catalog => cmd_catalog(cfg),
        Cmd::Eval { points } => cmd_eval(cfg, points),
        Cmd::Order { kind } => cmd_order(cfg, *kind),
        Cmd::Trajectory { z0, t_end } => cmd_trajectory(cfg, z0, *t_end),
        Cmd::Distortion { alpha, pairs } => cmd_distortion(cfg, *alpha, *pairs),
        Cmd::Criteria { criterion, lambda, alpha, lambda_count } => {
            cmd_criteria(cfg, *criterion, *lambda, *alpha, *lambda_count)
        }
        Cmd::GridExport => cmd_grid_export(cfg),
    }
}

fn cmd_catalog(cfg: &RunConfig) -> CmdResult {
    let mut out = OutputTarget::create(cfg.out.as_deref())?;
    for e in catalog::ENTRIES {
        let fmt_order = |v: Option<f64>| v.map_or("-".to_string(), fmt_f64);
        out.line(&format!(
            "{}: mu={}, upper={}, {}, params: {} -- {}",
            e.name,
            fmt_order(e.lower_order),
            fmt_order(e.upper_order),
            if e.unbounded { "unbounded" } else { "bounded" },
            e.params,
            e.notes,
        ))?;
    }
    out.done()?;
    Ok(0)
}

fn cmd_eval(cfg: &RunConfig, points: &str) -> CmdResult {
    let f = cfg.build_map()?;
    let pts: Vec<Complex64> = points
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_point)
        .collect::<Result<_, _>>()?;
    if pts.is_empty() {
        return Err(usage_err("no points given"));
    }

    let mut out = OutputTarget::create(cfg.out.as_deref())?;
    match cfg.format {
        Format::Csv => {
            out.line("re_z,im_z,re_P,im_P,re_A,im_A,abs_A,re_S,im_S,jacobian,re_omega,im_omega,error")?;
            for &z in &pts {
                match operators::operator_sample(&f, z) {
                    Ok(s) => {
                        let sv = s.s.unwrap_or(Complex64::new(f64::NAN, f64::NAN));
                        out.line(&format!(
                            "{},{},{},{},{},{},{},{},{},{},{},{},",
                            fmt_f64(z.re),
                            fmt_f64(z.im),
                            fmt_f64(s.p.re),
                            fmt_f64(s.p.im),
                            fmt_f64(s.a.re),
                            fmt_f64(s.a.im),
                            fmt_f64(s.a.norm()),
                            fmt_f64(sv.re),
                            fmt_f64(sv.im),
                            fmt_f64(s.jacobian),
                            fmt_f64(s.omega.re),
                            fmt_f64(s.omega.im),
                        ))?;
                    }
                    Err(e) => {
                        out.line(&format!(
                            "{},{},,,,,,,,,,,\"{}\"",
                            fmt_f64(z.re),
                            fmt_f64(z.im),
                            e
                        ))?;
                    }
                }
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = pts
                .iter()
                .map(|&z| match operators::operator_sample(&f, z) {
                    Ok(s) => serde_json::json!({
                        "z": [z.re, z.im],
                        "P": [s.p.re, s.p.im],
                        "A": [s.a.re, s.a.im],
                        "abs_A": s.a.norm(),
                        "S": s.s.map(|v| [v.re, v.im]),
                        "jacobian": s.jacobian,
                        "omega": [s.omega.re, s.omega.im],
                    }),
                    Err(e) => serde_json::json!({
                        "z": [z.re, z.im],
                        "error": e.to_string(),
                    }),
                })
                .collect();
            out.json(&serde_json::json!({ "map": f.label(), "samples": rows }))?;
        }
    }
    out.done()?;
    Ok(0)
}

fn cmd_order(cfg: &RunConfig, kind: OrderKind) -> CmdResult {
    let f = cfg.build_map()?;
    let grid = cfg.grid();
    let est = match kind {
        OrderKind::Lower => order::lower_order(&f, &grid),
        OrderKind::Upper => order::upper_order(&f, &grid),
    }
    .map_err(from_core)?;
    let mut out = OutputTarget::create(cfg.out.as_deref())?;
    out.json(&serde_json::json!({
        "map": f.label(),
        "kind": match est.kind { ExtremumKind::Lower => "lower", ExtremumKind::Upper => "upper" },
        "estimate": est,
    }))?;
    out.done()?;
    Ok(0)
}

fn cmd_trajectory(cfg: &RunConfig, z0: &str, t_end: f64) -> CmdResult {
    let f = cfg.build_map()?;
    let z0 = parse_point(z0)?;
    let traj = geometry::integrate_trajectory(&f, z0, t_end, cfg.ode_tol).map_err(from_core)?;

    let mut rows = Vec::with_capacity(traj.states.len());
    for s in &traj.states {
        let level = geometry::level_value(&f, s.z).map_err(from_core)?;
        let drift = (level - s.t).abs() / s.t;
        rows.push((s.t, s.z, level, drift));
    }

    let mut out = OutputTarget::create(cfg.out.as_deref())?;
    match cfg.format {
        Format::Csv => {
            out.line("t,re_z,im_z,level,drift")?;
            for (t, z, level, drift) in &rows {
                out.line(&format!(
                    "{},{},{},{},{}",
                    fmt_f64(*t),
                    fmt_f64(z.re),
                    fmt_f64(z.im),
                    fmt_f64(*level),
                    fmt_f64(*drift)
                ))?;
            }
        }
        Format::Json => {
            out.json(&serde_json::json!({
                "map": traj.map_label,
                "tol": traj.tol,
                "termination": traj.termination,
                "states": rows
                    .iter()
                    .map(|(t, z, level, drift)| serde_json::json!({
                        "t": t, "z": [z.re, z.im], "level": level, "drift": drift,
                    }))
                    .collect::<Vec<_>>(),
            }))?;
        }
    }
    out.done()?;
    Ok(0)
}

fn cmd_distortion(cfg: &RunConfig, alpha: f64, n_pairs: usize) -> CmdResult {
    let f = cfg.build_map()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs: Vec<(Complex64, Complex64)> = (0..n_pairs)
        .map(|_| (random_disk_point(&mut rng, 0.95), random_disk_point(&mut rng, 0.95)))
        .collect();
    let report = geometry::verify_distortion(&f, alpha, &pairs, cfg.report_tol).map_err(from_core)?;

    let mut out = OutputTarget::create(cfg.out.as_deref())?;
    match cfg.format {
        Format::Csv => {
            out.line("re_z0,im_z0,re_z1,im_z1,ratio,lo,hi,pass")?;
            for p in &report.pairs {
                out.line(&format!(
                    "{},{},{},{},{},{},{},{}",
                    fmt_f64(p.z0.re),
                    fmt_f64(p.z0.im),
                    fmt_f64(p.z1.re),
                    fmt_f64(p.z1.im),
                    fmt_f64(p.ratio),
                    fmt_f64(p.lower),
                    fmt_f64(p.upper),
                    p.pass
                ))?;
            }
        }
        Format::Json => out.json(&report)?,
    }
    out.done()?;
    Ok(if report.pass { 0 } else { 1 })
}

fn random_disk_point<R: Rng>(rng: &mut R, r_max: f64) -> Complex64 {
    let r = r_max * rng.gen::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.gen::<f64>();
    Complex64::from_polar(r, theta)
}

fn cmd_criteria(
    cfg: &RunConfig,
    criterion: CriterionName,
    lambda: Option<f64>,
    alpha: Option<f64>,
    lambda_count: usize,
) -> CmdResult {
    let f = cfg.build_map()?;
    let zgrid = cfg.grid();
    let ogrid = cfg.grid();
    let tol = cfg.report_tol;

    let need_lambda = || lambda.ok_or_else(|| usage_err("this criterion needs --lambda"));
    let need_alpha = || alpha.ok_or_else(|| usage_err("this criterion needs --alpha"));

    let report = match criterion {
        CriterionName::Shc => criteria::shc_check(&f, &zgrid, lambda_count, tol),
        CriterionName::ShcOrderBound => {
            criteria::shc_order_bound_check(&f, &zgrid, lambda_count, tol)
        }
        CriterionName::ConcaveFamily => {
            criteria::concave_family_check(&f, need_alpha()?, &zgrid, lambda_count, tol)
        }
        CriterionName::StableConcaveMu => criteria::stable_concave_mu_bound(
            &f,
            need_alpha()?,
            &zgrid,
            lambda_count,
            &ogrid,
            tol,
        ),
        CriterionName::Nh => criteria::nh_lambda_check(&f, need_lambda()?, &zgrid, tol),
        CriterionName::MuSqrt => {
            let unbounded = cfg.map_unbounded_flag();
            criteria::mu_sqrt_bound_check(&f, need_lambda()?, &zgrid, &ogrid, unbounded, tol)
        }
    }
    .map_err(from_core)?;

    let pass = report.pass;
    let mut out = OutputTarget::create(cfg.out.as_deref())?;
    out.json(&serde_json::json!({ "map": f.label(), "report": report }))?;
    out.done()?;
    Ok(if pass { 0 } else { 1 })
}

fn cmd_grid_export(cfg: &RunConfig) -> CmdResult {
    let f = cfg.build_map()?;
    let samples = order::grid_samples(&f, &cfg.grid()).map_err(from_core)?;
    let mut out = OutputTarget::create(cfg.out.as_deref())?;
    out.line("r,theta,re_z,im_z,abs_A,re_A,im_A,jacobian")?;
    for s in &samples {
        out.line(&format!(
            "{},{},{},{},{},{},{},{}",
            fmt_f64(s.r),
            fmt_f64(s.theta),
            fmt_f64(s.z.re),
            fmt_f64(s.z.im),
            fmt_f64(s.a.norm()),
            fmt_f64(s.a.re),
            fmt_f64(s.a.im),
            fmt_f64(s.jacobian)
        ))?;
    }
    out.done()?;
    Ok(0)
}
