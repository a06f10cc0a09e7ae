//! Analytic functions on the unit disk, evaluated as order-3 jets.
//!
//! A function is either a closed-form catalog entry (jets come from the exact
//! derivative rules in [`crate::jet`]), a truncated Taylor series (jets come
//! from Horner evaluation, exact for the polynomial), or a composition node
//! (linear combination, precomposition with a disk automorphism). Values are
//! immutable after construction and safe to share across threads.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet3;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Automorphism of the unit disk, s(z) = e^{i theta} (z + a) / (1 + conj(a) z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskAutomorphism {
    a: Complex64,
    theta: f64,
}

impl DiskAutomorphism {
    pub fn new(a: Complex64, theta: f64) -> Result<Self> {
        if a.norm() >= 1.0 {
            return Err(Error::InvalidParam {
                name: "a",
                value: a.to_string(),
                reason: "automorphism center must satisfy |a| < 1",
            });
        }
        Ok(Self { a, theta })
    }

    pub fn identity() -> Self {
        Self { a: ZERO, theta: 0.0 }
    }

    pub fn center(&self) -> Complex64 {
        self.a
    }

    pub fn rotation(&self) -> f64 {
        self.theta
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        Complex64::cis(self.theta) * (z + self.a) / (ONE + self.a.conj() * z)
    }

    /// s'(z) = e^{i theta} (1 - |a|^2) / (1 + conj(a) z)^2.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let den = ONE + self.a.conj() * z;
        Complex64::cis(self.theta) * (1.0 - self.a.norm_sqr()) / (den * den)
    }

    /// Jet of the automorphism at z.
    pub fn jet(&self, z: Complex64) -> Jet3 {
        let rot = Complex64::cis(self.theta);
        let num = Jet3::new(rot * (z + self.a), rot, ZERO, ZERO);
        let den = Jet3::new(ONE + self.a.conj() * z, self.a.conj(), ZERO, ZERO);
        num / den
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: -self.a * Complex64::cis(self.theta),
            theta: -self.theta,
        }
    }
}

/// Closed-form catalog entries with exact derivative rules.
#[derive(Debug, Clone, PartialEq)]
enum Leaf {
    Identity,
    Constant(Complex64),
    /// l(z) = z / (1 - z), the half-plane map.
    HalfPlane,
    /// k(z) = z / (1 - z)^2, the Koebe map.
    Koebe,
    /// (z - z^2/2 + z^3/6) / (1 - z)^3, analytic part of the harmonic Koebe map.
    KoebeHarmonicH,
    /// (z^2/2 + z^3/6) / (1 - z)^3, co-analytic part of the harmonic Koebe map.
    KoebeHarmonicG,
    /// -(z/(1-z) + log(1-z)); derivative -z/(1-z)^2.
    LogExampleG,
    /// k_alpha(z) = (1/(2 alpha)) [((1+z)/(1-z))^alpha - 1], principal branch.
    /// (1+z)/(1-z) maps the disk onto the right half-plane, so the branch is
    /// single-valued there.
    KAlpha { alpha: f64 },
    /// ((1-z)^{-(1+2 beta)} - 1) / (1 + 2 beta), normalized so h(0)=0, h'(0)=1.
    ConcaveH { beta: f64 },
    /// Primitive of rho * z * (1-z)^{-2-2 beta}, vanishing at 0; the co-analytic
    /// part that gives the concave construction the dilatation w(z) = rho z.
    ConcaveG { beta: f64, rho: Complex64 },
}

impl Leaf {
    fn jet(&self, z: Complex64) -> Jet3 {
        let v = Jet3::variable(z);
        let one = Jet3::constant(ONE);
        match *self {
            Leaf::Identity => v,
            Leaf::Constant(k) => Jet3::constant(k),
            Leaf::HalfPlane => v / (one - v),
            Leaf::Koebe => {
                let w = one - v;
                v / (w * w)
            }
            // The derivatives of both harmonic-Koebe parts carry a factor that
            // vanishes at z = -1; the factored forms below avoid the
            // catastrophic cancellation a quotient-rule evaluation hits there
            // (the dilatation g'/h' -> 1 needs h' and g' to stay accurate).
            Leaf::KoebeHarmonicH => {
                let w = ONE - z;
                let d3 = ONE / (w * w * w);
                let d4 = d3 / w;
                Jet3::new(
                    poly_jet(z, &[ZERO, ONE, c(-0.5, 0.0), c(1.0 / 6.0, 0.0)]).f0 * d3,
                    (ONE + z) * d4,
                    (c(5.0, 0.0) + 3.0 * z) * d4 / w,
                    (c(28.0, 0.0) + 12.0 * z) * d4 / (w * w),
                )
            }
            Leaf::KoebeHarmonicG => {
                let w = ONE - z;
                let d3 = ONE / (w * w * w);
                let d4 = d3 / w;
                // g' = z * h' with the (1+z) d4 product associated exactly as
                // in the H arm, so the dilatation g'/h' = z comes out accurate
                // to one ulp even where both derivatives nearly vanish.
                Jet3::new(
                    poly_jet(z, &[ZERO, ZERO, c(0.5, 0.0), c(1.0 / 6.0, 0.0)]).f0 * d3,
                    z * ((ONE + z) * d4),
                    (ONE + 5.0 * z + 2.0 * z * z) * d4 / w,
                    (c(10.0, 0.0) + 24.0 * z + 6.0 * z * z) * d4 / (w * w),
                )
            }
            Leaf::LogExampleG => -(v / (one - v) + (one - v).ln()),
            Leaf::KAlpha { alpha } => ((one + v) / (one - v))
                .powf(alpha)
                .sub_const(ONE)
                .scale(c(0.5 / alpha, 0.0)),
            Leaf::ConcaveH { beta } => (one - v)
                .powf(-(1.0 + 2.0 * beta))
                .sub_const(ONE)
                .scale(c(1.0 / (1.0 + 2.0 * beta), 0.0)),
            Leaf::ConcaveG { beta, rho } => {
                let w = one - v;
                let t1 = w.powf(-1.0 - 2.0 * beta).scale(c(1.0 / (1.0 + 2.0 * beta), 0.0));
                let t2 = w.powf(-2.0 * beta).scale(c(1.0 / (2.0 * beta), 0.0));
                let shift = 1.0 / (2.0 * beta) - 1.0 / (1.0 + 2.0 * beta);
                (t1 - t2 + Jet3::constant(c(shift, 0.0))).scale(rho)
            }
        }
    }
}

trait SubConst {
    fn sub_const(self, k: Complex64) -> Jet3;
}

impl SubConst for Jet3 {
    fn sub_const(self, k: Complex64) -> Jet3 {
        Jet3::new(self.f0 - k, self.f1, self.f2, self.f3)
    }
}

/// Horner evaluation of a polynomial together with its first three derivatives.
/// The repeated synthetic-division accumulators yield Taylor coefficients, so
/// the second and third slots are rescaled by 2! and 3!.
fn poly_jet(z: Complex64, coeffs: &[Complex64]) -> Jet3 {
    let mut f0 = ZERO;
    let mut f1 = ZERO;
    let mut f2 = ZERO;
    let mut f3 = ZERO;
    for &a in coeffs.iter().rev() {
        f3 = f3 * z + f2;
        f2 = f2 * z + f1;
        f1 = f1 * z + f0;
        f0 = f0 * z + a;
    }
    Jet3::new(f0, f1, 2.0 * f2, 6.0 * f3)
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Taylor(Vec<Complex64>),
    Leaf(Leaf),
    /// ca * f + cb * g + cc
    LinComb {
        ca: Complex64,
        f: Box<AnalyticFunction>,
        cb: Complex64,
        g: Box<AnalyticFunction>,
        cc: Complex64,
    },
    /// f ∘ sigma
    Precompose {
        f: Box<AnalyticFunction>,
        sigma: DiskAutomorphism,
    },
}

/// An analytic function on the unit disk exposing value and derivatives up to
/// order 3. Derivatives stop at order 3 because the harmonic Schwarzian needs
/// h''' and w'' and nothing here needs more.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticFunction {
    repr: Repr,
}

impl AnalyticFunction {
    /// Truncated Taylor series c_0 + c_1 z + ... + c_N z^N, N >= 3.
    /// Coefficients are trusted as exact polynomial data.
    pub fn taylor(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 4 {
            return Err(Error::ShortTaylor { got: coeffs.len() });
        }
        Ok(Self { repr: Repr::Taylor(coeffs) })
    }

    /// Taylor series from real coefficient pairs `[re, im]` (the JSON wire form).
    pub fn taylor_from_pairs(pairs: &[[f64; 2]]) -> Result<Self> {
        Self::taylor(pairs.iter().map(|p| c(p[0], p[1])).collect())
    }

    pub fn identity() -> Self {
        Self { repr: Repr::Leaf(Leaf::Identity) }
    }

    pub fn constant(k: Complex64) -> Self {
        Self { repr: Repr::Leaf(Leaf::Constant(k)) }
    }

    pub fn zero() -> Self {
        Self::constant(ZERO)
    }

    /// l(z) = z/(1-z).
    pub fn half_plane() -> Self {
        Self { repr: Repr::Leaf(Leaf::HalfPlane) }
    }

    /// k(z) = z/(1-z)^2.
    pub fn koebe() -> Self {
        Self { repr: Repr::Leaf(Leaf::Koebe) }
    }

    pub fn koebe_harmonic_h() -> Self {
        Self { repr: Repr::Leaf(Leaf::KoebeHarmonicH) }
    }

    pub fn koebe_harmonic_g() -> Self {
        Self { repr: Repr::Leaf(Leaf::KoebeHarmonicG) }
    }

    pub fn log_example_g() -> Self {
        Self { repr: Repr::Leaf(Leaf::LogExampleG) }
    }

    /// k_alpha, extremal for the Jacobian distortion bounds; alpha > 0.
    pub fn k_alpha(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(Error::InvalidParam {
                name: "alpha",
                value: alpha.to_string(),
                reason: "alpha must be positive",
            });
        }
        Ok(Self { repr: Repr::Leaf(Leaf::KAlpha { alpha }) })
    }

    /// Normalized analytic part of the concave construction; beta > 0.
    pub fn concave_h(beta: f64) -> Result<Self> {
        if beta.is_nan() || beta <= 0.0 {
            return Err(Error::InvalidParam {
                name: "beta",
                value: beta.to_string(),
                reason: "beta must be positive",
            });
        }
        Ok(Self { repr: Repr::Leaf(Leaf::ConcaveH { beta }) })
    }

    /// Co-analytic part pairing with [`Self::concave_h`] so the dilatation is rho * z.
    pub fn concave_g(beta: f64, rho: Complex64) -> Result<Self> {
        if beta.is_nan() || beta <= 0.0 {
            return Err(Error::InvalidParam {
                name: "beta",
                value: beta.to_string(),
                reason: "beta must be positive",
            });
        }
        if rho.norm() >= 1.0 {
            return Err(Error::InvalidParam {
                name: "rho",
                value: rho.to_string(),
                reason: "|rho| must be < 1 for a sense-preserving dilatation",
            });
        }
        Ok(Self { repr: Repr::Leaf(Leaf::ConcaveG { beta, rho }) })
    }

    /// ca * f + cb * g + cc.
    pub fn lin_comb(
        ca: Complex64,
        f: AnalyticFunction,
        cb: Complex64,
        g: AnalyticFunction,
        cc: Complex64,
    ) -> Self {
        Self {
            repr: Repr::LinComb { ca, f: Box::new(f), cb, g: Box::new(g), cc },
        }
    }

    /// ca * f + cc.
    pub fn affine(ca: Complex64, f: AnalyticFunction, cc: Complex64) -> Self {
        Self::lin_comb(ca, f, ZERO, Self::zero(), cc)
    }

    /// self ∘ sigma, with jets propagated by the chain rule through order 3.
    pub fn precompose(&self, sigma: DiskAutomorphism) -> Self {
        Self {
            repr: Repr::Precompose { f: Box::new(self.clone()), sigma },
        }
    }

    /// True when the function is the literal zero constant (used to shortcut
    /// the dilatation of analytic maps).
    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Leaf(Leaf::Constant(k)) if k == ZERO)
    }

    /// Value and first three derivatives at z, |z| < 1.
    pub fn eval_jet(&self, z: Complex64) -> Result<Jet3> {
        if z.norm() >= 1.0 {
            return Err(Error::Domain { z, max_radius: 1.0 });
        }
        self.jet_unchecked(z)
    }

    fn jet_unchecked(&self, z: Complex64) -> Result<Jet3> {
        match &self.repr {
            Repr::Taylor(coeffs) => {
                if coeffs.len() < 4 {
                    return Err(Error::ShortTaylor { got: coeffs.len() });
                }
                Ok(poly_jet(z, coeffs))
            }
            Repr::Leaf(leaf) => Ok(leaf.jet(z)),
            Repr::LinComb { ca, f, cb, g, cc } => {
                let a = f.jet_unchecked(z)?;
                let b = g.jet_unchecked(z)?;
                let mut out = a.scale(*ca) + b.scale(*cb);
                out.f0 += cc;
                Ok(out)
            }
            Repr::Precompose { f, sigma } => {
                let inner = sigma.jet(z);
                let outer = f.jet_unchecked(inner.f0)?;
                Ok(Jet3::compose(outer, inner))
            }
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval_jet(z)?.f0)
    }
}
