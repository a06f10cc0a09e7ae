//! Catalog of named harmonic mappings with known order values.
//!
//! Closed forms used here (all derivable from the displayed h and g):
//!
//! * `half_plane_L`: h = (l + k)/2, g = (l - k)/2 with l = z/(1-z) and
//!   k = z/(1-z)^2; h'(z) = 1/(1-z)^3, g'(z) = -z/(1-z)^3, so w(z) = -z and
//!   J(z) = (1-|z|^2)/|1-z|^6. |A(z)| = 3/2 identically.
//! * `harmonic_koebe_K`: h = (z - z^2/2 + z^3/6)/(1-z)^3,
//!   g = (z^2/2 + z^3/6)/(1-z)^3; h'(z) = (1+z)/(1-z)^4 and
//!   g'(z) = z(1+z)/(1-z)^4, so the dilatation is w(z) = z (not stated with
//!   the defining formulas, but immediate from the derivatives) and h - g = k
//!   identically. |A|^2 = 9/4 + 4 (1-|z|^2)^2/|1-z^2|^2, so the infimum 3/2 is
//!   approached near +/- i and the supremum 5/2 is attained on the real axis.
//! * `power_map(n)`: f(z) = z + conj(z^n)/n, w(z) = z^{n-1};
//!   |A| = g(|z|) increasing with g(1) = 3/2.
//! * `log_example`: h = z/(1-z), g = -(z/(1-z) + log(1-z)), w(z) = -z;
//!   A(z) = (1 - conj(z))/(1-z) - conj(z)/2, so |A| <= 1 + |z|/2 and
//!   A(x) = 1 - x/2 on the real axis: infimum 1/2 (x -> 1), supremum 3/2.
//! * `k_alpha(alpha)`: analytic, g = 0; A(x) = alpha on the real axis and the
//!   supremum is alpha for alpha >= 1.
//! * `f_alpha(alpha, omega0)`: k_alpha + conj(omega0 k_alpha), the affine image
//!   of k_alpha that attains equality in the Jacobian distortion bounds.
//! * `affine_shear(epsilon)`: z + conj(epsilon z), an affine image of the
//!   identity; stable harmonic convex with order 1.
//! * `stable_concave(beta, rho)`: h = ((1-z)^{-(1+2 beta)} - 1)/(1+2 beta) with
//!   dilatation rho z; every slice h + lambda g is concave when
//!   |rho| < beta/(1+beta), and then 1 <= mu(f) <= 3/2.

use num_complex::Complex64;
use serde::Deserialize;

use crate::analytic::AnalyticFunction;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Parameters accepted by [`build`]; unknown names ignore unused fields.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
pub struct CatalogParams {
    /// power_map exponent, n >= 2.
    pub n: Option<u32>,
    /// k_alpha / f_alpha exponent, alpha > 0.
    pub alpha: Option<f64>,
    /// f_alpha affine factor, |omega0| < 1.
    #[serde(default, deserialize_with = "de_complex_opt")]
    pub omega0: Option<Complex64>,
    /// stable_concave exponent, beta > 0.
    pub beta: Option<f64>,
    /// stable_concave dilatation slope, |rho| < 1.
    #[serde(default, deserialize_with = "de_complex_opt")]
    pub rho: Option<Complex64>,
    /// affine_shear factor, |epsilon| < 1.
    #[serde(default, deserialize_with = "de_complex_opt")]
    pub epsilon: Option<Complex64>,
}

fn de_complex_opt<'de, D>(de: D) -> std::result::Result<Option<Complex64>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    // Accept [re, im] or a bare real number.
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Wire {
        Pair([f64; 2]),
        Real(f64),
    }
    Ok(Option::<Wire>::deserialize(de)?.map(|w| match w {
        Wire::Pair([re, im]) => Complex64::new(re, im),
        Wire::Real(re) => Complex64::new(re, 0.0),
    }))
}

impl CatalogParams {
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        if value.is_null() {
            return Ok(Self::default());
        }
        serde_json::from_value(value.clone()).map_err(|e| Error::BadDescriptor {
            reason: format!("bad catalog params: {e}"),
        })
    }
}

/// Static description of one catalog entry, including the known exact order
/// values printed by the CLI listing. `None` means no exact value is known
/// independent of parameters.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub lower_order: Option<f64>,
    pub upper_order: Option<f64>,
    /// Whether the image is unbounded (metadata used by the order-bound
    /// criteria; not decidable from samples).
    pub unbounded: bool,
    pub notes: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "identity",
        params: "none",
        lower_order: Some(0.0),
        upper_order: Some(1.0),
        unbounded: false,
        notes: "A(z) = -conj(z); infimum attained at 0, supremum in the limit |z| -> 1",
    },
    CatalogEntry {
        name: "half_plane_L",
        params: "none",
        lower_order: Some(1.5),
        upper_order: Some(1.5),
        unbounded: true,
        notes: "|A| = 3/2 identically; maps the disk onto Re w > -1/2",
    },
    CatalogEntry {
        name: "harmonic_koebe_K",
        params: "none",
        lower_order: Some(1.5),
        upper_order: Some(2.5),
        unbounded: true,
        notes: "slit-plane map; infimum approached near +/-i, supremum 5/2 on the real axis",
    },
    CatalogEntry {
        name: "power_map",
        params: "n: integer >= 2",
        lower_order: Some(0.0),
        upper_order: Some(1.5),
        unbounded: false,
        notes: "f(z) = z + conj(z^n)/n; univalent with non-convex image",
    },
    CatalogEntry {
        name: "log_example",
        params: "none",
        lower_order: Some(0.5),
        upper_order: Some(1.5),
        unbounded: true,
        notes: "h = z/(1-z), g = -(z/(1-z) + log(1-z)); both extrema are boundary limits",
    },
    CatalogEntry {
        name: "k_alpha",
        params: "alpha: real > 0",
        lower_order: None,
        upper_order: None,
        unbounded: true,
        notes: "analytic extremal of the distortion bounds; upper order = alpha for alpha >= 1",
    },
    CatalogEntry {
        name: "f_alpha",
        params: "alpha: real > 0, omega0: complex with |omega0| < 1",
        lower_order: None,
        upper_order: None,
        unbounded: true,
        notes: "k_alpha + conj(omega0 k_alpha); A equals that of k_alpha",
    },
    CatalogEntry {
        name: "affine_shear",
        params: "epsilon: complex with |epsilon| < 1",
        lower_order: Some(0.0),
        upper_order: Some(1.0),
        unbounded: false,
        notes: "z + conj(epsilon z); stable harmonic convex, A = -conj(z)",
    },
    CatalogEntry {
        name: "stable_concave",
        params: "beta: real > 0, rho: complex with |rho| < 1",
        lower_order: None,
        upper_order: None,
        unbounded: true,
        notes: "concave family construction; 1 <= mu <= 3/2 when |rho| < beta/(1+beta)",
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

fn param_f64(value: Option<f64>, name: &'static str) -> Result<f64> {
    value.ok_or(Error::InvalidParam {
        name,
        value: "missing".into(),
        reason: "required parameter",
    })
}

/// Build a catalog map by name.
pub fn build(name: &str, params: &CatalogParams) -> Result<HarmonicMap> {
    match name {
        "identity" => Ok(HarmonicMap::new(
            AnalyticFunction::identity(),
            AnalyticFunction::zero(),
            "identity",
        )),
        "half_plane_L" => {
            let half = Complex64::new(0.5, 0.0);
            let l = AnalyticFunction::half_plane();
            let k = AnalyticFunction::koebe();
            Ok(HarmonicMap::new(
                AnalyticFunction::lin_comb(half, l.clone(), half, k.clone(), ZERO),
                AnalyticFunction::lin_comb(half, l, -half, k, ZERO),
                "half_plane_L",
            ))
        }
        "harmonic_koebe_K" => Ok(HarmonicMap::new(
            AnalyticFunction::koebe_harmonic_h(),
            AnalyticFunction::koebe_harmonic_g(),
            "harmonic_koebe_K",
        )),
        "power_map" => {
            let n = params.n.ok_or(Error::InvalidParam {
                name: "n",
                value: "missing".into(),
                reason: "required parameter",
            })?;
            if n < 2 {
                return Err(Error::InvalidParam {
                    name: "n",
                    value: n.to_string(),
                    reason: "power_map needs n >= 2",
                });
            }
            // g(z) = z^n / n as exact polynomial data
            let mut coeffs = vec![ZERO; (n as usize + 1).max(4)];
            coeffs[n as usize] = Complex64::new(1.0 / n as f64, 0.0);
            Ok(HarmonicMap::new(
                AnalyticFunction::identity(),
                AnalyticFunction::taylor(coeffs)?,
                format!("power_map({n})"),
            ))
        }
        "log_example" => Ok(HarmonicMap::new(
            AnalyticFunction::half_plane(),
            AnalyticFunction::log_example_g(),
            "log_example",
        )),
        "k_alpha" => {
            let alpha = param_f64(params.alpha, "alpha")?;
            Ok(HarmonicMap::new(
                AnalyticFunction::k_alpha(alpha)?,
                AnalyticFunction::zero(),
                format!("k_alpha({alpha})"),
            ))
        }
        "f_alpha" => {
            let alpha = param_f64(params.alpha, "alpha")?;
            let omega0 = params.omega0.ok_or(Error::InvalidParam {
                name: "omega0",
                value: "missing".into(),
                reason: "required parameter",
            })?;
            if omega0.norm() >= 1.0 {
                return Err(Error::InvalidParam {
                    name: "omega0",
                    value: omega0.to_string(),
                    reason: "f_alpha needs |omega0| < 1",
                });
            }
            let ka = AnalyticFunction::k_alpha(alpha)?;
            Ok(HarmonicMap::new(
                ka.clone(),
                AnalyticFunction::affine(omega0, ka, ZERO),
                format!("f_alpha({alpha},{omega0})"),
            ))
        }
        "affine_shear" => {
            let eps = params.epsilon.ok_or(Error::InvalidParam {
                name: "epsilon",
                value: "missing".into(),
                reason: "required parameter",
            })?;
            if eps.norm() >= 1.0 {
                return Err(Error::InvalidParam {
                    name: "epsilon",
                    value: eps.to_string(),
                    reason: "affine_shear needs |epsilon| < 1",
                });
            }
            Ok(HarmonicMap::new(
                AnalyticFunction::identity(),
                AnalyticFunction::affine(eps, AnalyticFunction::identity(), ZERO),
                format!("affine_shear({eps})"),
            ))
        }
        "stable_concave" => {
            let beta = param_f64(params.beta, "beta")?;
            let rho = params.rho.unwrap_or(ZERO);
            Ok(HarmonicMap::new(
                AnalyticFunction::concave_h(beta)?,
                AnalyticFunction::concave_g(beta, rho)?,
                format!("stable_concave({beta},{rho})"),
            ))
        }
        other => Err(Error::UnknownCatalog { name: other.to_string() }),
    }
}
