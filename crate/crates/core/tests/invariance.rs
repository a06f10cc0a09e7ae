//! Invariance and covariance properties of the operator A_f across the whole
//! catalog, plus the order-estimate properties these imply.

mod common;

use common::*;
use harmap::catalog::{self, CatalogParams};
use harmap::geometry;
use harmap::operators;
use harmap::order::{self, GridSpec};
use harmap::Complex;
use proptest::prelude::*;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn affine_invariance_of_a() {
    // A_{L o f} = A_f
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let maps = catalog_maps();
    for _ in 0..100 {
        let f = &maps[rng.gen_range(0..maps.len())];
        let l = random_affine(&mut rng);
        let z = random_disk_point(&mut rng, 0.9);
        let lhs = operators::a_operator(&f.postcompose_affine(&l), z).unwrap();
        let rhs = operators::a_operator(f, z).unwrap();
        assert!(
            (lhs - rhs).norm() <= 1e-10,
            "{}: {} vs {} at {}",
            f.label(),
            lhs,
            rhs,
            z
        );
    }
}

#[test]
fn automorphism_covariance_of_a() {
    // A_{f o s}(z) = (s'(z)/|s'(z)|) A_f(s(z))
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let maps = catalog_maps();
    for _ in 0..100 {
        let f = &maps[rng.gen_range(0..maps.len())];
        let sigma = random_automorphism(&mut rng);
        let z = random_disk_point(&mut rng, 0.9);
        let lhs = operators::a_operator(&f.precompose(sigma), z).unwrap();
        let d = sigma.derivative(z);
        let rhs = (d / d.norm()) * operators::a_operator(f, sigma.apply(z)).unwrap();
        assert!(
            (lhs - rhs).norm() <= 1e-9,
            "{}: {} vs {} at {}",
            f.label(),
            lhs,
            rhs,
            z
        );
    }
}

#[test]
fn covariance_at_a_real_center() {
    // s centered at 0.3 with no rotation has s'(0) > 0, so the phase factor
    // drops out: A_{f o s}(0) = A_f(0.3).
    let l = catalog::build("half_plane_L", &Default::default()).unwrap();
    let sigma = harmap::DiskAutomorphism::new(c(0.3, 0.0), 0.0).unwrap();
    let lhs = operators::a_operator(&l.precompose(sigma), c(0.0, 0.0)).unwrap();
    let rhs = operators::a_operator(&l, c(0.3, 0.0)).unwrap();
    assert!((lhs - rhs).norm() <= 1e-9);
}

#[test]
fn koebe_transform_reproduces_a() {
    // half of H_0''(0) equals A_f(a)
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let maps = catalog_maps();
    for _ in 0..50 {
        let f = &maps[rng.gen_range(0..maps.len())];
        let a = random_disk_point(&mut rng, 0.7);
        let res = f.koebe_transform(a).unwrap();
        let want = operators::a_operator(f, a).unwrap();
        assert!(
            (res.half_h0pp0 - want).norm() <= 1e-8,
            "{} at {}: {} vs {}",
            f.label(),
            a,
            res.half_h0pp0,
            want
        );
    }
}

#[test]
fn koebe_transform_normalization_across_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for f in catalog_maps() {
        let a = random_disk_point(&mut rng, 0.6);
        let res = f.koebe_transform(a).unwrap();
        let (jh, jg) = res.f0.jets(c(0.0, 0.0)).unwrap();
        assert!(jh.f0.norm() <= 1e-12, "{}: H0(0) = {}", f.label(), jh.f0);
        assert!((jh.f1 - c(1.0, 0.0)).norm() <= 1e-10, "{}: H0'(0) = {}", f.label(), jh.f1);
        assert!(jg.f1.norm() <= 1e-10, "{}: G0'(0) = {}", f.label(), jg.f1);
        assert!(res.b1.norm() < 1.0);
    }
}

#[test]
fn orders_are_invariant_under_l_and_sigma() {
    // mu(L o f o s) = mu(f) and the same for the upper order, within the
    // sampled-estimate slack at the default grid.
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let grid = GridSpec::default();
    let names = ["half_plane_L", "identity", "power_map", "log_example", "harmonic_koebe_K"];
    for name in names {
        let params = if name == "power_map" {
            CatalogParams { n: Some(2), ..Default::default() }
        } else {
            CatalogParams::default()
        };
        let f = catalog::build(name, &params).unwrap();
        let sigma = random_automorphism(&mut rng);
        let l = random_affine(&mut rng);
        let transformed = f.precompose(sigma).postcompose_affine(&l);

        let base_lower = order::lower_order(&f, &grid).unwrap().value;
        let moved_lower = order::lower_order(&transformed, &grid).unwrap().value;
        assert!(
            (base_lower - moved_lower).abs() <= 2e-2,
            "{name}: lower {base_lower} vs {moved_lower}"
        );

        let base_upper = order::upper_order(&f, &grid).unwrap().value;
        let moved_upper = order::upper_order(&transformed, &grid).unwrap().value;
        assert!(
            (base_upper - moved_upper).abs() <= 2e-2,
            "{name}: upper {base_upper} vs {moved_upper}"
        );
    }
}

#[test]
fn estimates_match_known_orders_at_default_grid() {
    // full golden table: both estimates within 1e-2 of the exact orders
    let grid = GridSpec::default();
    let cases: Vec<(&str, CatalogParams, f64, f64)> = vec![
        ("identity", CatalogParams::default(), 0.0, 1.0),
        ("half_plane_L", CatalogParams::default(), 1.5, 1.5),
        ("harmonic_koebe_K", CatalogParams::default(), 1.5, 2.5),
        ("power_map", CatalogParams { n: Some(2), ..Default::default() }, 0.0, 1.5),
        ("power_map", CatalogParams { n: Some(5), ..Default::default() }, 0.0, 1.5),
        ("log_example", CatalogParams::default(), 0.5, 1.5),
        (
            "affine_shear",
            CatalogParams { epsilon: Some(c(0.5, 0.0)), ..Default::default() },
            0.0,
            1.0,
        ),
    ];
    for (name, params, mu, sup) in cases {
        let f = catalog::build(name, &params).unwrap();
        let lower = order::lower_order(&f, &grid).unwrap().value;
        let upper = order::upper_order(&f, &grid).unwrap().value;
        assert!((lower - mu).abs() <= 1e-2, "{name}: lower {lower} vs {mu}");
        assert!((upper - sup).abs() <= 1e-2, "{name}: upper {upper} vs {sup}");
    }
}

#[test]
fn universal_order_bounds_hold_on_catalog() {
    // lower estimates stay below 3/2, upper estimates above 1
    let grid = GridSpec::default();
    for f in catalog_maps() {
        let lower = order::lower_order(&f, &grid).unwrap().value;
        let upper = order::upper_order(&f, &grid).unwrap().value;
        assert!(lower <= 1.5 + 1e-9, "{}: lower {lower}", f.label());
        assert!(upper >= 1.0 - 1e-3, "{}: upper {upper}", f.label());
    }
}

#[test]
fn shc_maps_have_unit_upper_order() {
    let grid = GridSpec::default();
    for params in [
        CatalogParams { epsilon: Some(c(0.0, 0.0)), ..Default::default() },
        CatalogParams { epsilon: Some(c(0.5, 0.0)), ..Default::default() },
        CatalogParams { epsilon: Some(c(0.3, -0.4)), ..Default::default() },
    ] {
        let f = catalog::build("affine_shear", &params).unwrap();
        let upper = order::upper_order(&f, &grid).unwrap().value;
        assert!(
            (1.0 - 1e-3..=1.0 + 1e-9).contains(&upper),
            "{}: upper {upper}",
            f.label()
        );
    }
}

#[test]
fn equality_propagates_along_the_extremal_ray() {
    // For f_alpha the level ratio between collinear points on the positive
    // axis equals exp(2 alpha rho) exactly.
    let fa = catalog::build(
        "f_alpha",
        &CatalogParams { alpha: Some(1.5), omega0: Some(c(0.2, 0.0)), ..Default::default() },
    )
    .unwrap();
    for &(r0, r1) in &[(0.1, 0.4), (0.25, 0.7), (0.5, 0.9), (0.05, 0.85)] {
        let l0 = geometry::level_value(&fa, c(r0, 0.0)).unwrap();
        let l1 = geometry::level_value(&fa, c(r1, 0.0)).unwrap();
        let rho = geometry::hyperbolic_distance(c(r0, 0.0), c(r1, 0.0)).unwrap();
        let want = (2.0 * 1.5 * rho).exp();
        assert!(
            ((l1 / l0) / want - 1.0).abs() <= 1e-9,
            "ratio {} vs {}",
            l1 / l0,
            want
        );
    }
}

#[test]
fn distortion_bounds_hold_with_golden_alpha() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for (f, alpha) in maps_with_golden_alpha() {
        let pairs: Vec<(Complex, Complex)> = (0..500)
            .map(|_| (random_disk_point(&mut rng, 0.95), random_disk_point(&mut rng, 0.95)))
            .collect();
        let report = geometry::verify_distortion(&f, alpha, &pairs, 1e-9).unwrap();
        assert!(
            report.pass,
            "{} at alpha {alpha}: worst margin {}",
            f.label(),
            report.worst_margin
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_invariance(
        (ar, at) in (0.0f64..0.85, 0.0f64..std::f64::consts::TAU),
        rot in 0.0f64..std::f64::consts::TAU,
        (r1, t1) in (0.0f64..0.95, 0.0f64..std::f64::consts::TAU),
        (r2, t2) in (0.0f64..0.95, 0.0f64..std::f64::consts::TAU),
    ) {
        let sigma = harmap::DiskAutomorphism::new(Complex::from_polar(ar, at), rot).unwrap();
        let z = Complex::from_polar(r1, t1);
        let w = Complex::from_polar(r2, t2);
        let before = geometry::hyperbolic_distance(z, w).unwrap();
        let after = geometry::hyperbolic_distance(sigma.apply(z), sigma.apply(w)).unwrap();
        prop_assert!((before - after).abs() <= 1e-12);
    }

    #[test]
    fn a_and_p_stay_consistent(
        (r, t) in (0.0f64..0.95, 0.0f64..std::f64::consts::TAU),
        idx in 0usize..8,
    ) {
        let maps = catalog_maps();
        let f = &maps[idx % maps.len()];
        let z = Complex::from_polar(r, t);
        let sample = operators::operator_sample(f, z).unwrap();
        let reconstructed = 0.5 * operators::unit_disk_factor(z) * sample.p - z.conj();
        prop_assert_eq!(sample.a, reconstructed);
    }
}
