//! Sampled checks of functional-inequality hypotheses: stable convexity of the
//! slices phi_lambda = h + lambda g, the concave-family condition, the
//! NH_lambda Schwarzian bound, and the order bounds each implies.
//!
//! Sampled checks certify nothing globally: a failing report carries a
//! concrete witness, a passing report is evidence relative to its grid, which
//! is recorded in the report alongside the worst margin.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::operators;
use crate::order::{self, GridSpec};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Grid parameters recorded in every report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridDesc {
    pub radial: usize,
    pub angular: usize,
    pub dyadic_depth: u32,
    pub lambda_count: usize,
}

impl GridDesc {
    fn new(grid: &GridSpec, lambda_count: usize) -> Self {
        Self {
            radial: grid.radial,
            angular: grid.angular,
            dyadic_depth: grid.dyadic_depth,
            lambda_count,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriterionWitness {
    #[serde(with = "crate::wire")]
    pub z: Complex64,
    #[serde(with = "crate::wire::opt")]
    pub lambda: Option<Complex64>,
}

/// Outcome of one sampled criterion. `pass` holds iff the check was applicable
/// and the worst margin stayed above -tolerance; `worst_margin` is NaN for
/// inapplicable reports.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub grid: GridDesc,
    pub applicable: bool,
    pub pass: bool,
    pub worst_margin: f64,
    pub witness: Option<CriterionWitness>,
    pub notes: Vec<String>,
}

impl CriterionReport {
    fn not_applicable(criterion: &str, grid: GridDesc, note: String) -> Self {
        Self {
            criterion: criterion.to_string(),
            grid,
            applicable: false,
            pass: false,
            worst_margin: f64::NAN,
            witness: None,
            notes: vec![note],
        }
    }
}

fn unit_roots(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|j| Complex64::cis(std::f64::consts::TAU * j as f64 / count as f64))
        .collect()
}

/// Worst value of a per-(z, lambda) functional over the product grid, swept in
/// parallel over z with an index-ordered reduction. The functional returns
/// `None` when the slice derivative degenerates at that (z, lambda).
enum PointOutcome {
    Value { margin: f64, lambda: Complex64 },
    Singular { lambda: Complex64 },
}

fn product_sweep<F>(
    f: &HarmonicMap,
    z_grid: &GridSpec,
    lambdas: &[Complex64],
    functional: F,
) -> Result<(f64, Option<CriterionWitness>, Vec<String>)>
where
    F: Fn(Complex64, &crate::jet::Jet3, &crate::jet::Jet3, Complex64) -> Option<f64> + Sync,
{
    let points = z_grid.points();
    let outcomes: Vec<PointOutcome> = points
        .par_iter()
        .map(|&z| {
            let (jh, jg) = f.jets(z)?;
            let mut best: Option<(f64, Complex64)> = None;
            for &lambda in lambdas {
                match functional(z, &jh, &jg, lambda) {
                    Some(v) => {
                        if best.is_none_or(|(b, _)| v < b) {
                            best = Some((v, lambda));
                        }
                    }
                    None => return Ok(PointOutcome::Singular { lambda }),
                }
            }
            let (margin, lambda) = best.expect("lambda grid is nonempty");
            Ok(PointOutcome::Value { margin, lambda })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut worst = f64::INFINITY;
    let mut witness = None;
    let mut notes = Vec::new();
    for (i, outcome) in outcomes.iter().enumerate() {
        match *outcome {
            PointOutcome::Value { margin, lambda } => {
                if margin < worst {
                    worst = margin;
                    witness = Some(CriterionWitness { z: points[i], lambda: Some(lambda) });
                }
            }
            PointOutcome::Singular { lambda } => {
                if notes.is_empty() {
                    notes.push(format!(
                        "slice derivative vanished at z = {}, lambda = {}",
                        points[i], lambda
                    ));
                    witness = Some(CriterionWitness { z: points[i], lambda: Some(lambda) });
                }
                worst = f64::NEG_INFINITY;
            }
        }
    }
    Ok((worst, witness, notes))
}

/// Stable harmonic convexity: every slice phi_lambda = h + lambda g, |lambda|=1,
/// passes the classical convexity test Re{1 + z phi''/phi'} > 0 on the grid.
pub fn shc_check(
    f: &HarmonicMap,
    z_grid: &GridSpec,
    lambda_count: usize,
    tolerance: f64,
) -> Result<CriterionReport> {
    let lambdas = unit_roots(lambda_count);
    let (worst, witness, notes) = product_sweep(f, z_grid, &lambdas, |z, jh, jg, lambda| {
        let phi1 = jh.f1 + lambda * jg.f1;
        let phi2 = jh.f2 + lambda * jg.f2;
        if phi1.norm() < 1e-14 {
            return None;
        }
        Some((ONE + z * phi2 / phi1).re)
    })?;
    Ok(CriterionReport {
        criterion: "shc".into(),
        grid: GridDesc::new(z_grid, lambda_count),
        applicable: true,
        pass: worst >= -tolerance,
        worst_margin: worst,
        witness,
        notes,
    })
}

/// Order bound implied by stable convexity:
/// |A_f(z)| + |(1-|z|^2) w'(z) / (2 (1-|w(z)|^2))| <= 1 on the grid.
/// Runs [`shc_check`] first; inapplicable when that fails.
pub fn shc_order_bound_check(
    f: &HarmonicMap,
    z_grid: &GridSpec,
    lambda_count: usize,
    tolerance: f64,
) -> Result<CriterionReport> {
    let grid = GridDesc::new(z_grid, lambda_count);
    let precheck = shc_check(f, z_grid, lambda_count, tolerance)?;
    if !precheck.pass {
        return Ok(CriterionReport::not_applicable(
            "shc_order_bound",
            grid,
            "stable convexity precheck failed; the order bound does not apply".into(),
        ));
    }
    let points = z_grid.points();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&z| {
            let a = operators::a_operator(f, z)?;
            let (w0, w1, _) = operators::omega_jets(f, z)?;
            let correction = (1.0 - z.norm_sqr()) * w1 / (2.0 * (1.0 - w0.norm_sqr()));
            Ok(1.0 - (a.norm() + correction.norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut worst, mut idx) = (f64::INFINITY, 0);
    for (i, &v) in values.iter().enumerate() {
        if v < worst {
            worst = v;
            idx = i;
        }
    }
    Ok(CriterionReport {
        criterion: "shc_order_bound".into(),
        grid,
        applicable: true,
        pass: worst >= -tolerance,
        worst_margin: worst,
        witness: Some(CriterionWitness { z: points[idx], lambda: None }),
        notes: vec![],
    })
}

/// Concave-family condition with opening angle pi*alpha, 1 <= alpha <= 2:
/// Re{ ((alpha+1)/2) (1+z)/(1-z) - 1 - z phi_lambda''/phi_lambda' } > 0
/// over the product grid.
pub fn concave_family_check(
    f: &HarmonicMap,
    alpha: f64,
    z_grid: &GridSpec,
    lambda_count: usize,
    tolerance: f64,
) -> Result<CriterionReport> {
    if !(1.0..=2.0).contains(&alpha) {
        return Err(Error::InvalidParam {
            name: "alpha",
            value: alpha.to_string(),
            reason: "the concave-family condition needs 1 <= alpha <= 2",
        });
    }
    let lambdas = unit_roots(lambda_count);
    let (worst, witness, notes) = product_sweep(f, z_grid, &lambdas, |z, jh, jg, lambda| {
        let phi1 = jh.f1 + lambda * jg.f1;
        let phi2 = jh.f2 + lambda * jg.f2;
        if phi1.norm() < 1e-14 {
            return None;
        }
        let head = 0.5 * (alpha + 1.0) * (ONE + z) / (ONE - z);
        Some((head - ONE - z * phi2 / phi1).re)
    })?;
    Ok(CriterionReport {
        criterion: "concave_family".into(),
        grid: GridDesc::new(z_grid, lambda_count),
        applicable: true,
        pass: worst >= -tolerance,
        worst_margin: worst,
        witness,
        notes,
    })
}

/// Order range implied by a concave family: when [`concave_family_check`]
/// passes, the lower-order estimate must land in [1 - 1e-2, 3/2 + 1e-9].
/// The lambda slices are sampled and image unboundedness is not verified;
/// the report states both gaps.
pub fn stable_concave_mu_bound(
    f: &HarmonicMap,
    alpha: f64,
    z_grid: &GridSpec,
    lambda_count: usize,
    order_grid: &GridSpec,
    tolerance: f64,
) -> Result<CriterionReport> {
    let grid = GridDesc::new(z_grid, lambda_count);
    let precheck = concave_family_check(f, alpha, z_grid, lambda_count, tolerance)?;
    if !precheck.pass {
        return Ok(CriterionReport::not_applicable(
            "stable_concave_mu",
            grid,
            format!(
                "concave-family precheck failed (worst margin {:.6e}); order range not applicable",
                precheck.worst_margin
            ),
        ));
    }
    let est = order::lower_order(f, order_grid)?;
    let margin = (est.value - (1.0 - 1e-2)).min(1.5 + 1e-9 - est.value);
    Ok(CriterionReport {
        criterion: "stable_concave_mu".into(),
        grid,
        applicable: true,
        pass: margin >= -tolerance,
        worst_margin: margin,
        witness: Some(CriterionWitness { z: est.witness, lambda: None }),
        notes: vec![
            format!("lower-order estimate {:.9}", est.value),
            "lambda slices sampled only; image unboundedness not verified".into(),
        ],
    })
}

/// NH_lambda membership: |S_f(z)| + |w'(z)|^2/(1-|w(z)|^2)^2 <= 2 lambda /
/// (1-|z|^2)^2 on the grid, 0 < lambda <= 1. The report also compares
/// |P_f(0)| with the sharp boundedness threshold 2 sqrt(1-lambda).
pub fn nh_lambda_check(
    f: &HarmonicMap,
    lambda: f64,
    z_grid: &GridSpec,
    tolerance: f64,
) -> Result<CriterionReport> {
    if lambda.is_nan() || lambda <= 0.0 || lambda > 1.0 {
        return Err(Error::InvalidParam {
            name: "lambda",
            value: lambda.to_string(),
            reason: "nh_lambda_check needs 0 < lambda <= 1",
        });
    }
    let points = z_grid.points();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&z| {
            let s = operators::schwarzian(f, z)?;
            let (w0, w1, _) = operators::omega_jets(f, z)?;
            let den = 1.0 - w0.norm_sqr();
            let lhs = s.norm() + w1.norm_sqr() / (den * den);
            let budget = 2.0 * lambda / (1.0 - z.norm_sqr()).powi(2);
            Ok(budget - lhs)
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut worst, mut idx) = (f64::INFINITY, 0);
    for (i, &v) in values.iter().enumerate() {
        if v < worst {
            worst = v;
            idx = i;
        }
    }
    let p0 = operators::pre_schwarzian(f, Complex64::new(0.0, 0.0))?.norm();
    let threshold = 2.0 * (1.0 - lambda).sqrt();
    let notes = vec![format!(
        "boundedness threshold: |P_f(0)| = {:.9} vs 2 sqrt(1 - lambda) = {:.9} ({})",
        p0,
        threshold,
        if p0 < threshold {
            "below threshold: membership would force a bounded image"
        } else {
            "not below threshold"
        }
    )];
    Ok(CriterionReport {
        criterion: "nh_lambda".into(),
        grid: GridDesc::new(z_grid, 0),
        applicable: true,
        pass: worst >= -tolerance,
        worst_margin: worst,
        witness: Some(CriterionWitness { z: points[idx], lambda: None }),
        notes,
    })
}

/// Lower-order consequence of NH_lambda membership for unbounded maps:
/// mu(f) >= sqrt(1 - lambda). The sampled lower-order estimate is an upper
/// bound for mu, so a pass is supporting evidence while a fail is a genuine
/// counter-signal to the hypothesis chain.
pub fn mu_sqrt_bound_check(
    f: &HarmonicMap,
    lambda: f64,
    z_grid: &GridSpec,
    order_grid: &GridSpec,
    unbounded: bool,
    tolerance: f64,
) -> Result<CriterionReport> {
    let grid = GridDesc::new(z_grid, 0);
    let nh = nh_lambda_check(f, lambda, z_grid, tolerance)?;
    if !nh.pass {
        return Ok(CriterionReport::not_applicable(
            "mu_sqrt_bound",
            grid,
            format!(
                "NH_lambda hypothesis fails at lambda = {lambda} (worst margin {:.6e})",
                nh.worst_margin
            ),
        ));
    }
    if !unbounded {
        return Ok(CriterionReport::not_applicable(
            "mu_sqrt_bound",
            grid,
            "map is not flagged unbounded; the bound requires an unbounded image".into(),
        ));
    }
    let est = order::lower_order(f, order_grid)?;
    let bound = (1.0 - lambda).sqrt();
    let margin = est.value - (bound - 1e-2);
    Ok(CriterionReport {
        criterion: "mu_sqrt_bound".into(),
        grid,
        applicable: true,
        pass: margin >= -tolerance,
        worst_margin: margin,
        witness: Some(CriterionWitness { z: est.witness, lambda: None }),
        notes: vec![format!(
            "lower-order estimate {:.9} vs sqrt(1 - lambda) = {:.9}; the estimate is an upper bound for mu",
            est.value, bound
        )],
    })
}
