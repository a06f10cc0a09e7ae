//! Sense-preserving planar harmonic mappings f = h + conj(g).
//!
//! The represented object is the pair of analytic functions (h, g); f itself is
//! recovered as h(z) + conj(g(z)). Sense preservation (J_f > 0, equivalently
//! |w| = |g'/h'| < 1) is checked lazily at evaluation points and certified on
//! sampled grids only; the catalog entries are known-good.

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{AnalyticFunction, DiskAutomorphism};
use crate::error::{Error, Result};
use crate::jet::Jet3;
use crate::limits;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Planar affine map L(z) = a z + b conj(z) + c with a != 0 and |b| < |a|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl AffineMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        if a == ZERO {
            return Err(Error::InvalidParam {
                name: "a",
                value: a.to_string(),
                reason: "affine coefficient a must be nonzero",
            });
        }
        if b.norm() >= a.norm() {
            return Err(Error::InvalidParam {
                name: "b",
                value: b.to_string(),
                reason: "affine map needs |b/a| < 1",
            });
        }
        Ok(Self { a, b, c })
    }

    pub fn identity() -> Self {
        Self { a: ONE, b: ZERO, c: ZERO }
    }

    pub fn apply(&self, w: Complex64) -> Complex64 {
        self.a * w + self.b * w.conj() + self.c
    }
}

/// Result of the normalizing disk transform at a point a:
/// F(z) = (f((a+z)/(1+conj(a)z)) - f(a)) / ((1-|a|^2) h'(a)), then the affine
/// correction F_0 = (F - conj(B_1 F)) / (1 - |B_1|^2).
#[derive(Debug, Clone)]
pub struct KoebeTransformResult {
    /// The normalized map: H_0(0) = 0, H_0'(0) = 1, G_0'(0) = 0.
    pub f0: HarmonicMap,
    /// Dilatation value of the intermediate map at 0; equals w(a) rotated by
    /// the phase of h'(a), |B_1| < 1.
    pub b1: Complex64,
    /// H_0''(0)/2; coincides with A_f(a).
    pub half_h0pp0: Complex64,
}

/// Grid report from [`HarmonicMap::is_sense_preserving_sampled`].
#[derive(Debug, Clone, Serialize)]
pub struct SenseReport {
    pub pass: bool,
    pub min_jacobian: f64,
    pub max_abs_dilatation: f64,
    /// Points where J_f <= 0 or |w| >= 1 (capped at 32 entries).
    pub violations: Vec<[f64; 2]>,
    pub points_checked: usize,
}

/// Polar sampling grid for the sense-preservation report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PolarGrid {
    pub radial: usize,
    pub angular: usize,
    pub max_radius: f64,
}

impl PolarGrid {
    pub fn new(radial: usize, angular: usize, max_radius: f64) -> Self {
        Self { radial, angular, max_radius }
    }

    pub fn points(&self) -> Vec<Complex64> {
        let mut pts = Vec::with_capacity(self.radial * self.angular + 1);
        pts.push(ZERO);
        for i in 1..=self.radial {
            let r = self.max_radius * i as f64 / self.radial as f64;
            for j in 0..self.angular {
                let theta = std::f64::consts::TAU * j as f64 / self.angular as f64;
                pts.push(Complex64::from_polar(r, theta));
            }
        }
        pts
    }
}

/// A harmonic mapping f = h + conj(g) with a display label.
#[derive(Debug, Clone)]
pub struct HarmonicMap {
    h: AnalyticFunction,
    g: AnalyticFunction,
    label: String,
}

impl HarmonicMap {
    pub fn new(h: AnalyticFunction, g: AnalyticFunction, label: impl Into<String>) -> Self {
        Self { h, g, label: label.into() }
    }

    pub fn h(&self) -> &AnalyticFunction {
        &self.h
    }

    pub fn g(&self) -> &AnalyticFunction {
        &self.g
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// f(z) = h(z) + conj(g(z)).
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.h.eval(z)? + self.g.eval(z)?.conj())
    }

    /// Jets of both parts at z.
    pub fn jets(&self, z: Complex64) -> Result<(Jet3, Jet3)> {
        Ok((self.h.eval_jet(z)?, self.g.eval_jet(z)?))
    }

    /// Second complex dilatation w(z) = g'(z)/h'(z).
    pub fn dilatation(&self, z: Complex64) -> Result<Complex64> {
        let (jh, jg) = self.jets(z)?;
        if jh.f1.norm() < limits::MIN_H_PRIME {
            return Err(Error::VanishingDerivative { z, magnitude: jh.f1.norm() });
        }
        Ok(jg.f1 / jh.f1)
    }

    /// J_f(z) = |h'(z)|^2 - |g'(z)|^2; positive iff sense-preserving at z.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        let (jh, jg) = self.jets(z)?;
        Ok(jh.f1.norm_sqr() - jg.f1.norm_sqr())
    }

    /// Sweep a polar grid and report min J_f and max |w|; pass iff J_f > 0
    /// everywhere on the grid.
    pub fn is_sense_preserving_sampled(&self, grid: &PolarGrid) -> Result<SenseReport> {
        let mut min_j = f64::INFINITY;
        let mut max_w = 0.0f64;
        let mut violations = Vec::new();
        let pts = grid.points();
        for &z in &pts {
            let (jh, jg) = self.jets(z)?;
            let j = jh.f1.norm_sqr() - jg.f1.norm_sqr();
            let w = if jh.f1.norm() < limits::MIN_H_PRIME {
                f64::INFINITY
            } else {
                (jg.f1 / jh.f1).norm()
            };
            min_j = min_j.min(j);
            max_w = max_w.max(w);
            if (j <= 0.0 || w >= 1.0) && violations.len() < 32 {
                violations.push([z.re, z.im]);
            }
        }
        Ok(SenseReport {
            pass: violations.is_empty(),
            min_jacobian: min_j,
            max_abs_dilatation: max_w,
            violations,
            points_checked: pts.len(),
        })
    }

    /// f ∘ sigma, jets carried by the chain rule through order 3.
    pub fn precompose(&self, sigma: DiskAutomorphism) -> HarmonicMap {
        HarmonicMap {
            h: self.h.precompose(sigma),
            g: self.g.precompose(sigma),
            label: format!("{}|aut", self.label),
        }
    }

    /// L ∘ f for an affine L(w) = a w + b conj(w) + c. The analytic part becomes
    /// a h + b g + c and the co-analytic part conj(a) g + conj(b) h.
    pub fn postcompose_affine(&self, l: &AffineMap) -> HarmonicMap {
        HarmonicMap {
            h: AnalyticFunction::lin_comb(l.a, self.h.clone(), l.b, self.g.clone(), l.c),
            g: AnalyticFunction::lin_comb(
                l.a.conj(),
                self.g.clone(),
                l.b.conj(),
                self.h.clone(),
                ZERO,
            ),
            label: format!("{}|aff", self.label),
        }
    }

    /// Normalizing transform at a: recenters with the automorphism through a,
    /// rescales by (1-|a|^2) h'(a), then removes the residual co-analytic
    /// derivative at 0 with the affine correction. The returned H_0''(0)/2 is
    /// an independent route to A_f(a).
    pub fn koebe_transform(&self, a: Complex64) -> Result<KoebeTransformResult> {
        if a.norm() >= 1.0 {
            return Err(Error::Domain { z: a, max_radius: 1.0 });
        }
        let sigma = DiskAutomorphism::new(a, 0.0).expect("|a| < 1 checked above");
        let jh = self.h.eval_jet(a)?;
        let jg = self.g.eval_jet(a)?;
        if jh.f1.norm() < limits::MIN_H_PRIME {
            return Err(Error::VanishingDerivative { z: a, magnitude: jh.f1.norm() });
        }
        let d = (1.0 - a.norm_sqr()) * jh.f1;

        // H = (h∘sigma - h(a)) / d,  G = (g∘sigma - g(a)) / conj(d)
        let h_fn = AnalyticFunction::affine(
            ONE / d,
            self.h.precompose(sigma),
            -jh.f0 / d,
        );
        let g_fn = AnalyticFunction::affine(
            ONE / d.conj(),
            self.g.precompose(sigma),
            -jg.f0 / d.conj(),
        );

        let jh0 = h_fn.eval_jet(ZERO)?;
        let jg0 = g_fn.eval_jet(ZERO)?;
        let b1 = jg0.f1;
        let den = 1.0 - b1.norm_sqr();
        if den < limits::MIN_OMEGA_MARGIN {
            return Err(Error::DilatationNearUnit { z: a, margin: den });
        }

        // F_0 = (F - conj(B_1 F)) / (1 - |B_1|^2) splits into
        // H_0 = (H - conj(B_1) G) / (1-|B_1|^2),  G_0 = (G - B_1 H) / (1-|B_1|^2).
        let h0_fn = AnalyticFunction::lin_comb(
            ONE / den,
            h_fn.clone(),
            -b1.conj() / den,
            g_fn.clone(),
            ZERO,
        );
        let g0_fn = AnalyticFunction::lin_comb(ONE / den, g_fn, -b1 / den, h_fn, ZERO);

        let half_h0pp0 = (jh0.f2 - b1.conj() * jg0.f2) / (2.0 * den);

        Ok(KoebeTransformResult {
            f0: HarmonicMap::new(h0_fn, g0_fn, format!("{}|koebe", self.label)),
            b1,
            half_h0pp0,
        })
    }
}

/// JSON descriptor for a map: either `{"catalog": "<name>", "params": {...}}`
/// or `{"taylor": {"h": [[re,im],...], "g": [[re,im],...]}}`.
pub fn map_from_json(json: &str) -> Result<HarmonicMap> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(|e| Error::BadDescriptor {
        reason: format!("not valid JSON: {e}"),
    })?;
    map_from_descriptor(&value)
}

pub fn map_from_descriptor(value: &serde_json::Value) -> Result<HarmonicMap> {
    if let Some(taylor) = value.get("taylor") {
        return taylor_pair_from_value(taylor);
    }
    if let Some(name) = value.get("catalog").and_then(|v| v.as_str()) {
        let params = crate::catalog::CatalogParams::from_json(
            value.get("params").unwrap_or(&serde_json::Value::Null),
        )?;
        return crate::catalog::build(name, &params);
    }
    Err(Error::BadDescriptor {
        reason: "descriptor must contain a 'catalog' or 'taylor' key".into(),
    })
}

fn taylor_pair_from_value(value: &serde_json::Value) -> Result<HarmonicMap> {
    #[derive(serde::Deserialize)]
    struct Pair {
        h: Vec<[f64; 2]>,
        g: Vec<[f64; 2]>,
    }
    let pair: Pair = serde_json::from_value(value.clone()).map_err(|e| Error::BadDescriptor {
        reason: format!("taylor descriptor must be {{\"h\": [[re,im],...], \"g\": [...]}}: {e}"),
    })?;
    Ok(HarmonicMap::new(
        AnalyticFunction::taylor_from_pairs(&pair.h)?,
        AnalyticFunction::taylor_from_pairs(&pair.g)?,
        "taylor",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dilatation_of_half_plane_l_is_minus_z() {
        let l = catalog::build("half_plane_L", &Default::default()).unwrap();
        let z = c(0.3, 0.0);
        let w = l.dilatation(z).unwrap();
        assert!((w - c(-0.3, 0.0)).norm() < 1e-14);
        let z = c(0.2, -0.4);
        assert!((l.dilatation(z).unwrap() + z).norm() < 1e-13);
    }

    #[test]
    fn dilatation_of_identity_vanishes() {
        let f = catalog::build("identity", &Default::default()).unwrap();
        assert!(f.dilatation(c(0.7, 0.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn dilatation_of_log_example() {
        // g'(z) = -z/(1-z)^2, h'(z) = 1/(1-z)^2, ratio -z
        let f = catalog::build("log_example", &Default::default()).unwrap();
        let w = f.dilatation(c(0.4, 0.0)).unwrap();
        assert!((w - c(-0.4, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn jacobian_closed_forms() {
        let l = catalog::build("half_plane_L", &Default::default()).unwrap();
        assert!((l.jacobian(c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-14);
        let z = c(0.25, 0.4);
        let expect = (1.0 - z.norm_sqr()) / (ONE - z).norm().powi(6);
        assert!((l.jacobian(z).unwrap() - expect).abs() < 1e-12 * expect.max(1.0));

        let id = catalog::build("identity", &Default::default()).unwrap();
        assert!((id.jacobian(c(0.6, -0.3)).unwrap() - 1.0).abs() < 1e-15);

        // f_alpha(alpha, w0) has J(0) = 1 - |w0|^2 since k_alpha'(0) = 1
        let params = catalog::CatalogParams {
            alpha: Some(1.5),
            omega0: Some(c(0.2, 0.1)),
            ..Default::default()
        };
        let fa = catalog::build("f_alpha", &params).unwrap();
        let expect = 1.0 - c(0.2, 0.1).norm_sqr();
        assert!((fa.jacobian(ZERO).unwrap() - expect).abs() < 1e-13);
    }

    #[test]
    fn sense_preserving_reports() {
        let grid = PolarGrid::new(12, 24, 0.95);
        let id = catalog::build("identity", &Default::default()).unwrap();
        let rep = id.is_sense_preserving_sampled(&grid).unwrap();
        assert!(rep.pass);
        assert!((rep.min_jacobian - 1.0).abs() < 1e-14);

        let k = catalog::build("harmonic_koebe_K", &Default::default()).unwrap();
        assert!(k.is_sense_preserving_sampled(&grid).unwrap().pass);

        // g = 2h is sense-reversing: |w| = 2 everywhere
        let bad = HarmonicMap::new(
            AnalyticFunction::half_plane(),
            AnalyticFunction::affine(c(2.0, 0.0), AnalyticFunction::half_plane(), ZERO),
            "bad",
        );
        let rep = bad.is_sense_preserving_sampled(&grid).unwrap();
        assert!(!rep.pass);
        assert!((rep.max_abs_dilatation - 2.0).abs() < 1e-12);
        assert!(!rep.violations.is_empty());
    }

    #[test]
    fn precompose_identity_automorphism_is_noop() {
        let l = catalog::build("half_plane_L", &Default::default()).unwrap();
        let l2 = l.precompose(DiskAutomorphism::identity());
        let z = c(0.3, -0.2);
        assert!((l.eval(z).unwrap() - l2.eval(z).unwrap()).norm() < 1e-14);
        let (a, _) = l.jets(z).unwrap();
        let (b, _) = l2.jets(z).unwrap();
        assert!((a.f3 - b.f3).norm() < 1e-11);
    }

    #[test]
    fn precompose_keeps_zero_dilatation() {
        let id = catalog::build("identity", &Default::default()).unwrap();
        let sigma = DiskAutomorphism::new(c(0.4, 0.2), 0.0).unwrap();
        let f = id.precompose(sigma);
        assert!(f.dilatation(c(0.1, 0.5)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn postcompose_identity_affine_is_noop() {
        let k = catalog::build("harmonic_koebe_K", &Default::default()).unwrap();
        let same = k.postcompose_affine(&AffineMap::identity());
        let z = c(-0.35, 0.15);
        assert!((k.eval(z).unwrap() - same.eval(z).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn postcompose_affine_shear_of_identity() {
        let id = catalog::build("identity", &Default::default()).unwrap();
        let l = AffineMap::new(ONE, c(0.5, 0.0), ZERO).unwrap();
        let f = id.postcompose_affine(&l);
        let z = c(0.3, 0.4);
        assert!((f.eval(z).unwrap() - (z + 0.5 * z.conj())).norm() < 1e-15);
        assert!((f.dilatation(z).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn affine_map_validation() {
        assert!(AffineMap::new(ZERO, ZERO, ZERO).is_err());
        assert!(AffineMap::new(ONE, c(1.0, 0.0), ZERO).is_err());
        assert!(AffineMap::new(ONE, c(0.99, 0.0), c(3.0, 1.0)).is_ok());
    }

    #[test]
    fn koebe_transform_of_identity_at_zero() {
        let id = catalog::build("identity", &Default::default()).unwrap();
        let res = id.koebe_transform(ZERO).unwrap();
        assert!(res.b1.norm() < 1e-15);
        assert!(res.half_h0pp0.norm() < 1e-15);
        let z = c(0.3, -0.6);
        assert!((res.f0.eval(z).unwrap() - z).norm() < 1e-14);
    }

    #[test]
    fn koebe_transform_golden_values_at_zero() {
        let l = catalog::build("half_plane_L", &Default::default()).unwrap();
        let res = l.koebe_transform(ZERO).unwrap();
        assert!((res.half_h0pp0 - c(1.5, 0.0)).norm() < 1e-13);

        let k = catalog::build("harmonic_koebe_K", &Default::default()).unwrap();
        let res = k.koebe_transform(ZERO).unwrap();
        assert!((res.half_h0pp0 - c(2.5, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn koebe_transform_normalization() {
        let k = catalog::build("harmonic_koebe_K", &Default::default()).unwrap();
        for &a in &[c(0.3, 0.2), c(-0.5, 0.1), c(0.0, -0.6)] {
            let res = k.koebe_transform(a).unwrap();
            assert!(res.b1.norm() < 1.0);
            let (jh, jg) = res.f0.jets(ZERO).unwrap();
            assert!(jh.f0.norm() <= 1e-12, "H0(0) = {}", jh.f0);
            assert!((jh.f1 - ONE).norm() <= 1e-10, "H0'(0) = {}", jh.f1);
            assert!(jg.f1.norm() <= 1e-10, "G0'(0) = {}", jg.f1);
        }
    }

    #[test]
    fn map_descriptor_roundtrip() {
        let f = map_from_json(r#"{"catalog": "power_map", "params": {"n": 2}}"#).unwrap();
        let z = c(0.5, 0.0);
        assert!((f.eval(z).unwrap() - c(0.625, 0.0)).norm() < 1e-15);

        let f = map_from_json(
            r#"{"taylor": {"h": [[0,0],[1,0],[0,0],[0,0]], "g": [[0,0],[0,0],[0.25,0],[0,0]]}}"#,
        )
        .unwrap();
        let z = c(0.4, 0.0);
        assert!((f.eval(z).unwrap() - (z + 0.25 * z * z)).norm() < 1e-15);

        assert!(map_from_json(r#"{"weird": 1}"#).is_err());
        assert!(map_from_json(r#"{"catalog": "nope"}"#).is_err());
    }
}
