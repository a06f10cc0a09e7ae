//! Shared helpers for the integration suites.

use harmap::catalog::{self, CatalogParams};
use harmap::{AffineMap, Complex, DiskAutomorphism, HarmonicMap};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Every catalog entry with representative parameters.
pub fn catalog_maps() -> Vec<HarmonicMap> {
    let builds: Vec<(&str, CatalogParams)> = vec![
        ("identity", CatalogParams::default()),
        ("half_plane_L", CatalogParams::default()),
        ("harmonic_koebe_K", CatalogParams::default()),
        ("power_map", CatalogParams { n: Some(2), ..Default::default() }),
        ("power_map", CatalogParams { n: Some(3), ..Default::default() }),
        ("log_example", CatalogParams::default()),
        ("k_alpha", CatalogParams { alpha: Some(1.5), ..Default::default() }),
        (
            "f_alpha",
            CatalogParams { alpha: Some(1.5), omega0: Some(c(0.2, 0.0)), ..Default::default() },
        ),
        (
            "affine_shear",
            CatalogParams { epsilon: Some(c(0.5, 0.0)), ..Default::default() },
        ),
        (
            "stable_concave",
            CatalogParams { beta: Some(0.25), rho: Some(c(0.15, 0.0)), ..Default::default() },
        ),
    ];
    builds
        .into_iter()
        .map(|(name, params)| catalog::build(name, &params).expect("catalog build"))
        .collect()
}

/// Catalog maps paired with an exact value of sup |A_f| (the golden alpha used
/// by the distortion suite).
pub fn maps_with_golden_alpha() -> Vec<(HarmonicMap, f64)> {
    let builds: Vec<(&str, CatalogParams, f64)> = vec![
        ("identity", CatalogParams::default(), 1.0),
        ("half_plane_L", CatalogParams::default(), 1.5),
        ("harmonic_koebe_K", CatalogParams::default(), 2.5),
        ("power_map", CatalogParams { n: Some(2), ..Default::default() }, 1.5),
        ("power_map", CatalogParams { n: Some(3), ..Default::default() }, 1.5),
        ("power_map", CatalogParams { n: Some(5), ..Default::default() }, 1.5),
        ("log_example", CatalogParams::default(), 1.5),
        ("k_alpha", CatalogParams { alpha: Some(1.5), ..Default::default() }, 1.5),
        (
            "f_alpha",
            CatalogParams { alpha: Some(1.5), omega0: Some(c(0.2, 0.0)), ..Default::default() },
            1.5,
        ),
        (
            "affine_shear",
            CatalogParams { epsilon: Some(c(0.5, 0.0)), ..Default::default() },
            1.0,
        ),
    ];
    builds
        .into_iter()
        .map(|(name, params, alpha)| (catalog::build(name, &params).expect("catalog build"), alpha))
        .collect()
}

pub fn random_disk_point<R: Rng>(rng: &mut R, r_max: f64) -> Complex {
    let r = r_max * rng.gen::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.gen::<f64>();
    Complex::from_polar(r, theta)
}

pub fn random_automorphism<R: Rng>(rng: &mut R) -> DiskAutomorphism {
    let a = random_disk_point(rng, 0.7);
    let theta = std::f64::consts::TAU * rng.gen::<f64>();
    DiskAutomorphism::new(a, theta).expect("|a| < 1")
}

pub fn random_affine<R: Rng>(rng: &mut R) -> AffineMap {
    let a = Complex::from_polar(0.5 + rng.gen::<f64>(), std::f64::consts::TAU * rng.gen::<f64>());
    let b = a * random_disk_point(rng, 0.9);
    let c = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * 4.0;
    AffineMap::new(a, b, c).expect("|b| < |a|")
}
