//! The pre-Schwarzian P_f, the disk operator A_f, and the harmonic Schwarzian
//! S_f of a sense-preserving harmonic mapping, plus the finite-difference
//! Wirtinger oracle used to validate them.
//!
//! With w = g'/h' the formulas are
//!
//! ```text
//! P_f = h''/h' - conj(w) w' / (1 - |w|^2)
//! A_f = ((1 - |z|^2)/2) P_f - conj(z)
//! S_f = d/dz P_f - P_f^2 / 2
//! d/dz P_f = (h''' h' - h''^2)/h'^2
//!          - conj(w) w''/(1-|w|^2) - (conj(w) w')^2/(1-|w|^2)^2
//! ```
//!
//! The d/dz expansion treats conj(w) as anti-analytic (its z-derivative is
//! zero); the finite-difference oracle below guards that closed form.

use num_complex::Complex64;

use crate::analytic::AnalyticFunction;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::limits;

/// P_f, A_f, S_f at one point.
#[derive(Debug, Clone, Copy)]
pub struct OperatorSample {
    pub z: Complex64,
    pub p: Complex64,
    pub a: Complex64,
    pub s: Option<Complex64>,
    pub omega: Complex64,
    pub jacobian: f64,
}

/// Wirtinger derivatives estimated by centered differences.
#[derive(Debug, Clone, Copy)]
pub struct WirtingerPair {
    pub dz: Complex64,
    pub dzbar: Complex64,
}

// Absolute slack absorbing the rounding of polar-to-cartesian conversions, so
// points constructed at exactly the cap radius stay admissible.
const RADIUS_SLACK: f64 = 1e-12;

/// 1 - |z|^2 evaluated as (1 - |z|)(1 + |z|). Near the boundary this loses
/// far less precision than 1 - norm_sqr: the subtraction happens on |z|
/// itself (correctly rounded by hypot) instead of on its rounded square.
pub fn unit_disk_factor(z: Complex64) -> f64 {
    let n = z.norm();
    (1.0 - n) * (1.0 + n)
}

fn check_radius(z: Complex64) -> Result<()> {
    if z.norm() > limits::MAX_EVAL_RADIUS + RADIUS_SLACK {
        return Err(Error::Domain { z, max_radius: limits::MAX_EVAL_RADIUS });
    }
    Ok(())
}

/// Value and first two derivatives of the dilatation w = g'/h', obtained by
/// dividing the derivative jets (Leibniz recurrence for g' = w h').
struct DilatationJets {
    w0: Complex64,
    w1: Complex64,
    w2: Complex64,
}

struct MapJets {
    h1: Complex64,
    h2: Complex64,
    h3: Complex64,
    w: DilatationJets,
    jacobian: f64,
}

fn map_jets(f: &HarmonicMap, z: Complex64) -> Result<MapJets> {
    check_radius(z)?;
    let (jh, jg) = f.jets(z)?;
    if jh.f1.norm() < limits::MIN_H_PRIME {
        return Err(Error::VanishingDerivative { z, magnitude: jh.f1.norm() });
    }
    let w0 = jg.f1 / jh.f1;
    let w1 = (jg.f2 - w0 * jh.f2) / jh.f1;
    let w2 = (jg.f3 - w0 * jh.f3 - 2.0 * w1 * jh.f2) / jh.f1;
    if unit_disk_factor(w0) < limits::MIN_OMEGA_MARGIN {
        return Err(Error::DilatationNearUnit { z, margin: unit_disk_factor(w0) });
    }
    Ok(MapJets {
        h1: jh.f1,
        h2: jh.f2,
        h3: jh.f3,
        w: DilatationJets { w0, w1, w2 },
        jacobian: jh.f1.norm_sqr() - jg.f1.norm_sqr(),
    })
}

fn a_from_p(p: Complex64, z: Complex64) -> Complex64 {
    0.5 * unit_disk_factor(z) * p - z.conj()
}

fn p_from_jets(m: &MapJets) -> Complex64 {
    m.h2 / m.h1 - m.w.w0.conj() * m.w.w1 / unit_disk_factor(m.w.w0)
}

/// P_f(z) = h''/h' - conj(w) w' / (1 - |w|^2).
pub fn pre_schwarzian(f: &HarmonicMap, z: Complex64) -> Result<Complex64> {
    Ok(p_from_jets(&map_jets(f, z)?))
}

/// A_f(z) = ((1 - |z|^2)/2) P_f(z) - conj(z).
pub fn a_operator(f: &HarmonicMap, z: Complex64) -> Result<Complex64> {
    Ok(a_from_p(p_from_jets(&map_jets(f, z)?), z))
}

/// The analytic-case operator A_h(z) = ((1-|z|^2)/2) h''/h' - conj(z).
/// Coincides with [`a_operator`] on maps with g identically zero (the
/// dilatation correction vanishes exactly there).
pub fn a_operator_analytic(h: &AnalyticFunction, z: Complex64) -> Result<Complex64> {
    check_radius(z)?;
    let jh = h.eval_jet(z)?;
    if jh.f1.norm() < limits::MIN_H_PRIME {
        return Err(Error::VanishingDerivative { z, magnitude: jh.f1.norm() });
    }
    Ok(a_from_p(jh.f2 / jh.f1, z))
}

/// S_f(z) = d/dz P_f - P_f^2/2 via the closed-form Wirtinger derivative.
pub fn schwarzian(f: &HarmonicMap, z: Complex64) -> Result<Complex64> {
    let m = map_jets(f, z)?;
    let p = p_from_jets(&m);
    Ok(dz_pre_schwarzian(&m) - 0.5 * p * p)
}

fn dz_pre_schwarzian(m: &MapJets) -> Complex64 {
    let analytic = (m.h3 * m.h1 - m.h2 * m.h2) / (m.h1 * m.h1);
    let den = unit_disk_factor(m.w.w0);
    let cw = m.w.w0.conj();
    let t = cw * m.w.w1;
    analytic - cw * m.w.w2 / den - t * t / (den * den)
}

/// P_f, A_f, S_f, w and J_f at one point; A is computed from P by the defining
/// relation, so the pair is internally consistent by construction.
pub fn operator_sample(f: &HarmonicMap, z: Complex64) -> Result<OperatorSample> {
    let m = map_jets(f, z)?;
    let p = p_from_jets(&m);
    let s = dz_pre_schwarzian(&m) - 0.5 * p * p;
    Ok(OperatorSample {
        z,
        p,
        a: a_from_p(p, z),
        s: Some(s),
        omega: m.w.w0,
        jacobian: m.jacobian,
    })
}

/// Dilatation value and first two derivatives at z (helper for the criteria
/// sweeps, which need w' and w'' directly).
pub(crate) fn omega_jets(
    f: &HarmonicMap,
    z: Complex64,
) -> Result<(Complex64, Complex64, Complex64)> {
    let m = map_jets(f, z)?;
    Ok((m.w.w0, m.w.w1, m.w.w2))
}

/// Centered-difference Wirtinger derivatives of a complex field:
/// dz ~ (d/dx - i d/dy)/2, dzbar ~ (d/dx + i d/dy)/2 at the given step.
pub fn wirtinger_fd<F>(field: F, z: Complex64, step: f64) -> Result<WirtingerPair>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let i = Complex64::new(0.0, 1.0);
    let stencil = [
        z + step,
        z - step,
        z + i * step,
        z - i * step,
    ];
    for &w in &stencil {
        if w.norm() > limits::MAX_EVAL_RADIUS + RADIUS_SLACK {
            return Err(Error::StencilOutsideDisk { z, step });
        }
    }
    let fxp = field(stencil[0])?;
    let fxm = field(stencil[1])?;
    let fyp = field(stencil[2])?;
    let fym = field(stencil[3])?;
    let dx = (fxp - fxm) / (2.0 * step);
    let dy = (fyp - fym) / (2.0 * step);
    Ok(WirtingerPair {
        dz: 0.5 * (dx - i * dy),
        dzbar: 0.5 * (dx + i * dy),
    })
}

/// Residual of the log-density identity
/// A_f(z) = (1 - |z|^2) d/dz log{ (1 - |z|^2) J_f^{1/2}(z) },
/// with the right-hand derivative taken by [`wirtinger_fd`]. Expected to be
/// below ~1e-6 at step 1e-5 away from the boundary.
pub fn log_density_gradient_check(f: &HarmonicMap, z: Complex64, step: f64) -> Result<f64> {
    let a = a_operator(f, z)?;
    let field = |w: Complex64| -> Result<Complex64> {
        let j = f.jacobian(w)?;
        if j <= 0.0 {
            return Err(Error::NonPositiveJacobian { z: w, value: j });
        }
        let val = ((1.0 - w.norm_sqr()) * j.sqrt()).ln();
        Ok(Complex64::new(val, 0.0))
    };
    let pair = wirtinger_fd(field, z, step)?;
    Ok((a - (1.0 - z.norm_sqr()) * pair.dz).norm())
}
