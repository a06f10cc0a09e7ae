//! Lower order inf |A_f| and upper order sup |A_f| over the disk, estimated
//! from polar-grid samples with honest one-sided semantics: a sampled infimum
//! is an upper bound for the true infimum, a sampled supremum a lower bound
//! for the true supremum. Both extrema are frequently attained only in the
//! |z| -> 1 limit, so the radii include a dyadic sequence 1 - 2^{-k} and each
//! ray gets a linear-in-(1-r) boundary extrapolation as a diagnostic.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::harmonic::HarmonicMap;
use crate::limits;
use crate::operators;

/// Polar grid parameters: `radial` uniform radii, `angular` equispaced rays,
/// dyadic radii 1 - 2^{-k} for k <= `dyadic_depth` (clamped to the operator
/// evaluation cap), and derivative-free refinement controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub radial: usize,
    pub angular: usize,
    pub dyadic_depth: u32,
    pub refine_iters: usize,
    pub refine_tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            radial: 64,
            angular: 256,
            dyadic_depth: 20,
            refine_iters: 40,
            refine_tol: 1e-12,
        }
    }
}

impl GridSpec {
    pub fn new(radial: usize, angular: usize, dyadic_depth: u32, refine_iters: usize) -> Self {
        Self { radial, angular, dyadic_depth, refine_iters, ..Self::default() }
    }

    /// Sorted, deduplicated radii: 0, uniform steps, then the dyadic tail.
    pub fn radii(&self) -> Vec<f64> {
        let mut radii = Vec::with_capacity(self.radial + self.dyadic_depth as usize + 1);
        for i in 0..=self.radial {
            radii.push(i as f64 / (self.radial as f64 + 1.0));
        }
        for k in 1..=self.dyadic_depth {
            let r = 1.0 - 0.5f64.powi(k as i32);
            radii.push(r.min(limits::MAX_EVAL_RADIUS));
        }
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        radii.dedup();
        radii
    }

    /// Dyadic radii only (the boundary probe), clamped to the evaluation cap.
    pub fn dyadic_radii(&self) -> Vec<f64> {
        let mut out: Vec<f64> = (1..=self.dyadic_depth)
            .map(|k| (1.0 - 0.5f64.powi(k as i32)).min(limits::MAX_EVAL_RADIUS))
            .collect();
        out.dedup();
        out
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.angular)
            .map(|j| std::f64::consts::TAU * j as f64 / self.angular as f64)
            .collect()
    }

    pub fn max_radius(&self) -> f64 {
        self.radii().last().copied().unwrap_or(0.0)
    }

    /// All grid points as complex numbers (the origin is listed once).
    pub fn points(&self) -> Vec<Complex64> {
        grid_points(self)
            .into_iter()
            .map(|(r, theta)| Complex64::from_polar(r, theta))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Lower,
    Upper,
}

/// Per-ray boundary diagnostic: |A_f(r e^{i theta})| extrapolated to r -> 1 by
/// a least-squares line in (1 - r) over the last four dyadic radii.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundaryRay {
    pub theta: f64,
    pub extrapolated_limit: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderEstimate {
    pub kind: ExtremumKind,
    pub value: f64,
    #[serde(with = "crate::wire")]
    pub witness: Complex64,
    /// One-sided-bound semantics of the sampled extremum.
    pub sampled_semantics: &'static str,
    pub boundary_rays: Vec<BoundaryRay>,
    pub grid: GridSpec,
}

/// One grid point with the operator values used by the CSV export.
#[derive(Debug, Clone, Copy)]
pub struct GridSample {
    pub r: f64,
    pub theta: f64,
    pub z: Complex64,
    pub a: Complex64,
    pub jacobian: f64,
}

/// Sampled-sup diagnostic for the criterion
/// |P_f(z) - 2/(1-z)| <= 2 lambda / (1 - |z|^2)  =>  mu(f) >= 1 - lambda.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MuCriterionBound {
    /// Sampled sup of ((1-|z|^2)/2) |P_f(z) - 2/(1-z)|; a lower bound for the
    /// true lambda, so the implied mu bound is heuristic unless it certifies.
    pub lambda_hat: f64,
    /// max(0, 1 - lambda_hat) when lambda_hat <= 1, else 0.
    pub implied_mu_lower: f64,
    #[serde(with = "crate::wire")]
    pub witness: Complex64,
}

fn grid_points(grid: &GridSpec) -> Vec<(f64, f64)> {
    let radii = grid.radii();
    let angles = grid.angles();
    let mut pts = Vec::with_capacity(radii.len() * angles.len());
    for &r in &radii {
        if r == 0.0 {
            pts.push((0.0, 0.0));
        } else {
            for &theta in &angles {
                pts.push((r, theta));
            }
        }
    }
    pts
}

fn abs_a(f: &HarmonicMap, r: f64, theta: f64) -> Result<f64> {
    Ok(operators::a_operator(f, Complex64::from_polar(r, theta))?.norm())
}

fn estimate(f: &HarmonicMap, grid: &GridSpec, kind: ExtremumKind) -> Result<OrderEstimate> {
    let pts = grid_points(grid);
    let values: Vec<f64> = pts
        .par_iter()
        .map(|&(r, theta)| abs_a(f, r, theta))
        .collect::<Result<Vec<_>>>()?;

    // Reduction by index keeps the result independent of thread count.
    let better = |candidate: f64, incumbent: f64| match kind {
        ExtremumKind::Lower => candidate < incumbent,
        ExtremumKind::Upper => candidate > incumbent,
    };
    let mut best_idx = 0;
    for (i, &v) in values.iter().enumerate() {
        if better(v, values[best_idx]) {
            best_idx = i;
        }
    }
    let (mut best_r, mut best_theta) = pts[best_idx];
    let mut best_val = values[best_idx];

    // Coordinate descent in (r, theta) with shrinking steps around the best
    // cell. |A_f| can be non-smooth at zeros of A_f, so no gradients here.
    let r_max = grid.max_radius();
    let mut dr = 1.0 / (grid.radial as f64 + 1.0);
    let mut dtheta = std::f64::consts::TAU / grid.angular as f64;
    for _ in 0..grid.refine_iters {
        let candidates = [
            ((best_r + dr).min(r_max), best_theta),
            ((best_r - dr).max(0.0), best_theta),
            (best_r, best_theta + dtheta),
            (best_r, best_theta - dtheta),
        ];
        let mut gained = 0.0f64;
        for &(r, theta) in &candidates {
            let v = abs_a(f, r, theta)?;
            if better(v, best_val) {
                gained = gained.max((v - best_val).abs());
                best_r = r;
                best_theta = theta;
                best_val = v;
            }
        }
        if gained < grid.refine_tol {
            dr *= 0.5;
            dtheta *= 0.5;
            if dr < 1e-15 && dtheta < 1e-15 {
                break;
            }
        }
    }

    let witness = Complex64::from_polar(best_r, best_theta);
    let boundary_rays = boundary_rays(f, grid)?;
    Ok(OrderEstimate {
        kind,
        value: best_val,
        witness,
        sampled_semantics: match kind {
            ExtremumKind::Lower => {
                "sampled infimum: an upper bound for the true infimum over the disk"
            }
            ExtremumKind::Upper => {
                "sampled supremum: a lower bound for the true supremum over the disk"
            }
        },
        boundary_rays,
        grid: *grid,
    })
}

fn boundary_rays(f: &HarmonicMap, grid: &GridSpec) -> Result<Vec<BoundaryRay>> {
    let dyadic = grid.dyadic_radii();
    let tail: Vec<f64> = dyadic.iter().rev().take(4).rev().copied().collect();
    grid.angles()
        .par_iter()
        .map(|&theta| {
            let mut xs = Vec::with_capacity(tail.len());
            let mut ys = Vec::with_capacity(tail.len());
            for &r in &tail {
                xs.push(1.0 - r);
                ys.push(abs_a(f, r, theta)?);
            }
            Ok(BoundaryRay { theta, extrapolated_limit: intercept(&xs, &ys) })
        })
        .collect()
}

/// Least-squares intercept of y against x (the value extrapolated to x = 0).
fn intercept(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return ys.first().copied().unwrap_or(f64::NAN);
    }
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-30 {
        return sy / n;
    }
    let slope = (n * sxy - sx * sy) / det;
    (sy - slope * sx) / n
}

/// mu(f) estimate: min |A_f| over the grid, then local refinement.
pub fn lower_order(f: &HarmonicMap, grid: &GridSpec) -> Result<OrderEstimate> {
    estimate(f, grid, ExtremumKind::Lower)
}

/// ||A_f|| estimate: max |A_f| over the grid, then local refinement.
pub fn upper_order(f: &HarmonicMap, grid: &GridSpec) -> Result<OrderEstimate> {
    estimate(f, grid, ExtremumKind::Upper)
}

/// |A_f| along the ray of angle theta at the given radii.
pub fn radial_profile(f: &HarmonicMap, theta: f64, radii: &[f64]) -> Result<Vec<(f64, f64)>> {
    radii.iter().map(|&r| Ok((r, abs_a(f, r, theta)?))).collect()
}

/// Sampled sup of ((1-|z|^2)/2) |P_f(z) - 2/(1-z)| and the mu lower bound it
/// implies when it stays <= 1.
pub fn mu_criterion_bound(f: &HarmonicMap, grid: &GridSpec) -> Result<MuCriterionBound> {
    let one = Complex64::new(1.0, 0.0);
    let pts = grid_points(grid);
    let values: Vec<f64> = pts
        .par_iter()
        .map(|&(r, theta)| {
            let z = Complex64::from_polar(r, theta);
            let p = operators::pre_schwarzian(f, z)?;
            Ok(0.5 * (1.0 - z.norm_sqr()) * (p - 2.0 / (one - z)).norm())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    let lambda_hat = values[best];
    Ok(MuCriterionBound {
        lambda_hat,
        implied_mu_lower: if lambda_hat <= 1.0 { 1.0 - lambda_hat } else { 0.0 },
        witness: Complex64::from_polar(pts[best].0, pts[best].1),
    })
}

/// Full grid sweep for CSV export.
pub fn grid_samples(f: &HarmonicMap, grid: &GridSpec) -> Result<Vec<GridSample>> {
    grid_points(grid)
        .par_iter()
        .map(|&(r, theta)| {
            let z = Complex64::from_polar(r, theta);
            let sample = operators::operator_sample(f, z)?;
            Ok(GridSample { r, theta, z, a: sample.a, jacobian: sample.jacobian })
        })
        .collect()
}
