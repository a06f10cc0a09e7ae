//! Hyperbolic-disk utilities, the level-set trajectory ODE, and the distortion
//! bounds on (1 - |z|^2) J_f^{1/2}.
//!
//! Conventions: Poincare density 1/(1 - |z|^2) and distance
//! rho(z, w) = arctanh |(z - w)/(1 - conj(w) z)|. This normalization is forced
//! by the distortion bounds: at z0 = 0 the two-sided inequality
//! exp(-2 a rho) <= ratio <= exp(2 a rho) must reduce to the Jacobian bounds
//! (1-r)^{2a-2}/(1+r)^{2a+2} <= J(r)/J(0) <= (1+r)^{2a-2}/(1-r)^{2a+2},
//! which requires exp(2 a rho(0, r)) = ((1+r)/(1-r))^a.

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{AnalyticFunction, DiskAutomorphism};
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::limits;
use crate::operators;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Hyperbolic distance rho(z, w) = arctanh of the pseudo-hyperbolic distance.
pub fn hyperbolic_distance(z: Complex64, w: Complex64) -> Result<f64> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain { z, max_radius: 1.0 });
    }
    if w.norm() >= 1.0 {
        return Err(Error::Domain { z: w, max_radius: 1.0 });
    }
    let pd = ((z - w) / (ONE - w.conj() * z)).norm();
    Ok(pd.atanh())
}

/// Level value t = (1 - |z|^2) J_f^{1/2}(z); the level sets C_f(t) are the
/// fibers of this quantity.
pub fn level_value(f: &HarmonicMap, z: Complex64) -> Result<f64> {
    let j = f.jacobian(z)?;
    if j <= 0.0 {
        return Err(Error::NonPositiveJacobian { z, value: j });
    }
    Ok((1.0 - z.norm_sqr()) * j.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    /// Integration reached t_end.
    SpanReached,
    /// |z| exceeded the boundary guard radius.
    BoundaryProximity,
    /// |A_f(z)| fell below the field guard.
    VanishingField,
    /// Step control failed (too many rejections or an underflowing step).
    StepFailure,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrajectoryState {
    pub t: f64,
    #[serde(with = "crate::wire")]
    pub z: Complex64,
}

/// Solution states of z'(t) = (1 - |z|^2) / (2 t A_f(z)), stored with t
/// strictly increasing (down-integrations are reversed on return). Along exact
/// solutions the parameter equals the level value of the point, which is the
/// integrator's primary correctness diagnostic.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub states: Vec<TrajectoryState>,
    pub map_label: String,
    pub tol: f64,
    pub termination: TerminationReason,
}

// Dormand-Prince 5(4) tableau.
const DP_C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn trajectory_field(f: &HarmonicMap, t: f64, z: Complex64) -> Result<Complex64> {
    let a = operators::a_operator(f, z)?;
    if a.norm() < limits::TRAJECTORY_MIN_FIELD {
        return Err(Error::TrajectoryFieldUndefined { z0: z, magnitude: a.norm() });
    }
    Ok((1.0 - z.norm_sqr()) / (2.0 * t * a))
}

/// Integrate the trajectory through z0 from t0 = level_value(f, z0) toward
/// t_end (either direction) with an embedded Dormand-Prince 5(4) step and
/// mixed absolute/relative error control at `tol`. Stops early with a recorded
/// reason near the boundary (|z| > 1 - 1e-4) or where the field degenerates
/// (|A_f| < 1e-8).
pub fn integrate_trajectory(
    f: &HarmonicMap,
    z0: Complex64,
    t_end: f64,
    tol: f64,
) -> Result<Trajectory> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParam {
            name: "tol",
            value: tol.to_string(),
            reason: "tolerance must be positive",
        });
    }
    if t_end.is_nan() || t_end <= 0.0 {
        return Err(Error::InvalidParam {
            name: "t_end",
            value: t_end.to_string(),
            reason: "levels are positive",
        });
    }
    let a0 = operators::a_operator(f, z0)?;
    if a0.norm() < limits::TRAJECTORY_MIN_FIELD {
        return Err(Error::TrajectoryFieldUndefined { z0, magnitude: a0.norm() });
    }
    let t0 = level_value(f, z0)?;

    let mut states = vec![TrajectoryState { t: t0, z: z0 }];
    if t_end == t0 {
        return Ok(Trajectory {
            states,
            map_label: f.label().to_string(),
            tol,
            termination: TerminationReason::SpanReached,
        });
    }

    let dir = (t_end - t0).signum();
    let mut t = t0;
    let mut z = z0;
    let mut h = tol.powf(0.2) * t0 * dir;
    let mut rejections = 0usize;
    let mut termination = TerminationReason::StepFailure;

    const MAX_STEPS: usize = 200_000;
    const MAX_REJECTIONS: usize = 60;

    for _ in 0..MAX_STEPS {
        if (t_end - t) * dir <= 0.0 {
            termination = TerminationReason::SpanReached;
            break;
        }
        if h.abs() > (t_end - t).abs() {
            h = t_end - t;
        }
        if h.abs() < 1e-14 * t.abs().max(1.0) {
            termination = TerminationReason::StepFailure;
            break;
        }

        let step = try_step(f, t, z, h, tol);
        match step {
            Ok((z5, err_norm)) => {
                if err_norm <= 1.0 {
                    t += h;
                    z = z5;
                    states.push(TrajectoryState { t, z });
                    rejections = 0;
                    if z.norm() > limits::TRAJECTORY_BOUNDARY_RADIUS {
                        termination = TerminationReason::BoundaryProximity;
                        break;
                    }
                    match operators::a_operator(f, z) {
                        Ok(a) if a.norm() >= limits::TRAJECTORY_MIN_FIELD => {}
                        _ => {
                            termination = TerminationReason::VanishingField;
                            break;
                        }
                    }
                    if (t_end - t) * dir <= 1e-14 * t_end.abs() {
                        termination = TerminationReason::SpanReached;
                        break;
                    }
                    let factor = (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0);
                    h *= factor;
                } else {
                    rejections += 1;
                    if rejections > MAX_REJECTIONS {
                        termination = TerminationReason::StepFailure;
                        break;
                    }
                    let factor = (0.9 * err_norm.powf(-0.2)).clamp(0.2, 1.0);
                    h *= factor;
                }
            }
            Err(_) => {
                // A stage left the admissible region; retry shorter.
                rejections += 1;
                if rejections > MAX_REJECTIONS {
                    termination = TerminationReason::StepFailure;
                    break;
                }
                h *= 0.5;
            }
        }
    }

    if dir < 0.0 {
        states.reverse();
    }
    Ok(Trajectory {
        states,
        map_label: f.label().to_string(),
        tol,
        termination,
    })
}

/// One Dormand-Prince step; returns the 5th-order state and the error norm
/// |z5 - z4| / (tol * (1 + |z|)), acceptable when <= 1.
fn try_step(
    f: &HarmonicMap,
    t: f64,
    z: Complex64,
    h: f64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let mut k = [Complex64::new(0.0, 0.0); 7];
    k[0] = trajectory_field(f, t, z)?;
    for stage in 0..6 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, kj) in k.iter().enumerate().take(stage + 1) {
            acc += DP_A[stage][j] * kj;
        }
        let zs = z + h * acc;
        let ts = t + DP_C[stage] * h;
        k[stage + 1] = trajectory_field(f, ts, zs)?;
    }
    let mut z5 = z;
    let mut z4 = z;
    for i in 0..7 {
        z5 += h * DP_B5[i] * k[i];
        z4 += h * DP_B4[i] * k[i];
    }
    let scale = 1.0 + z.norm().max(z5.norm());
    Ok((z5, (z5 - z4).norm() / (tol * scale)))
}

/// Max over states of |level_value(z) - t| / t; the parametrization identity
/// makes this the integrator's global-error measure.
pub fn check_level_consistency(f: &HarmonicMap, traj: &Trajectory) -> Result<f64> {
    let mut worst = 0.0f64;
    for s in &traj.states {
        let level = level_value(f, s.z)?;
        worst = worst.max((level - s.t).abs() / s.t);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub mu: f64,
    pub pairs_checked: usize,
    /// min over state pairs (i < j) of t_j/t_i - exp(2 mu rho(z_i, z_j)).
    pub min_margin: f64,
    pub pass: bool,
    pub tolerance: f64,
}

/// Check the trajectory growth bound: for states i < j on a trajectory,
/// t_j / t_i >= exp(2 mu rho(z_i, z_j)) whenever mu is a valid lower bound for
/// mu(f). Discrete state pairs stand in for the continuous arc.
pub fn verify_growth_bound(traj: &Trajectory, mu: f64, tolerance: f64) -> Result<GrowthReport> {
    let mut min_margin = f64::INFINITY;
    let mut pairs = 0usize;
    for i in 0..traj.states.len() {
        for j in (i + 1)..traj.states.len() {
            let (si, sj) = (&traj.states[i], &traj.states[j]);
            let rho = hyperbolic_distance(si.z, sj.z)?;
            let margin = sj.t / si.t - (2.0 * mu * rho).exp();
            min_margin = min_margin.min(margin);
            pairs += 1;
        }
    }
    if pairs == 0 {
        min_margin = 0.0;
    }
    Ok(GrowthReport {
        mu,
        pairs_checked: pairs,
        min_margin,
        pass: min_margin >= -tolerance,
        tolerance,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DistortionPair {
    #[serde(with = "crate::wire")]
    pub z0: Complex64,
    #[serde(with = "crate::wire")]
    pub z1: Complex64,
    /// (1-|z1|^2) J^{1/2}(z1) / ((1-|z0|^2) J^{1/2}(z0))
    pub ratio: f64,
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
    /// ratio/lower - 1 and upper/ratio - 1; both >= -rel_tol on a pass.
    pub margin_lower: f64,
    pub margin_upper: f64,
    /// Equality flags: the ratio sits on a bound to within rel_tol.
    pub equality_lower: bool,
    pub equality_upper: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistortionReport {
    pub alpha: f64,
    pub rel_tol: f64,
    pub pass: bool,
    pub worst_margin: f64,
    pub pairs: Vec<DistortionPair>,
}

/// Verify exp(-2 a rho(z0,z1)) <= ratio <= exp(2 a rho(z0,z1)) over the given
/// pairs, where alpha must dominate sup |A_f| for the bound to be a theorem.
pub fn verify_distortion(
    f: &HarmonicMap,
    alpha: f64,
    pairs: &[(Complex64, Complex64)],
    rel_tol: f64,
) -> Result<DistortionReport> {
    let mut rows = Vec::with_capacity(pairs.len());
    let mut worst = f64::INFINITY;
    for &(z0, z1) in pairs {
        let l0 = level_value(f, z0)?;
        let l1 = level_value(f, z1)?;
        let ratio = l1 / l0;
        let rho = hyperbolic_distance(z0, z1)?;
        let upper = (2.0 * alpha * rho).exp();
        let lower = 1.0 / upper;
        let margin_lower = ratio / lower - 1.0;
        let margin_upper = upper / ratio - 1.0;
        let pass = margin_lower >= -rel_tol && margin_upper >= -rel_tol;
        worst = worst.min(margin_lower).min(margin_upper);
        rows.push(DistortionPair {
            z0,
            z1,
            ratio,
            lower,
            upper,
            pass,
            margin_lower,
            margin_upper,
            equality_lower: margin_lower.abs() <= rel_tol,
            equality_upper: margin_upper.abs() <= rel_tol,
        });
    }
    if rows.is_empty() {
        worst = 0.0;
    }
    Ok(DistortionReport {
        alpha,
        rel_tol,
        pass: rows.iter().all(|r| r.pass),
        worst_margin: worst,
        pairs: rows,
    })
}

/// The two-sided Jacobian bound at radius r for order alpha:
/// ((1-r)^{2a-2}/(1+r)^{2a+2}, (1+r)^{2a-2}/(1-r)^{2a+2}).
pub fn jacobian_bounds(alpha: f64, r: f64) -> Result<(f64, f64)> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::InvalidParam {
            name: "alpha",
            value: alpha.to_string(),
            reason: "alpha must be >= 0",
        });
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidParam {
            name: "r",
            value: r.to_string(),
            reason: "radius must lie in [0, 1)",
        });
    }
    let lo = (1.0 - r).powf(2.0 * alpha - 2.0) / (1.0 + r).powf(2.0 * alpha + 2.0);
    let hi = (1.0 + r).powf(2.0 * alpha - 2.0) / (1.0 - r).powf(2.0 * alpha + 2.0);
    Ok((lo, hi))
}

/// Analytic part of the extremal map with constant dilatation attaining
/// equality in the Jacobian bounds along the ray of angle theta: for theta = 0
/// this is k_alpha itself (h' = (1+z)^{alpha-1}/(1-z)^{alpha+1}); general theta
/// gives z -> e^{i theta} k_alpha(e^{-i theta} z). The constant dilatation
/// omega0 does not enter h (its log-derivative term vanishes); it is validated
/// so the caller can assemble f = h + conj(omega0 h).
pub fn reconstruct_extremal_h(
    alpha: f64,
    theta: f64,
    omega0: Complex64,
) -> Result<AnalyticFunction> {
    if omega0.norm() >= 1.0 {
        return Err(Error::InvalidParam {
            name: "omega0",
            value: omega0.to_string(),
            reason: "|omega0| must be < 1",
        });
    }
    let ka = AnalyticFunction::k_alpha(alpha)?;
    if theta == 0.0 {
        return Ok(ka);
    }
    let rot = DiskAutomorphism::new(Complex64::new(0.0, 0.0), -theta).expect("|0| < 1");
    Ok(AnalyticFunction::affine(
        Complex64::cis(theta),
        ka.precompose(rot),
        Complex64::new(0.0, 0.0),
    ))
}
