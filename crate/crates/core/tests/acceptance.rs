//! Acceptance suite: the quantitative exit criteria for the crate, each
//! printed as a single pass/fail line (run with `--nocapture` to see them on
//! success).

mod common;

use std::time::Instant;

use common::*;
use harmap::catalog::{self, CatalogParams};
use harmap::geometry;
use harmap::operators;
use harmap::order::{self, GridSpec};
use harmap::Complex;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn finish(number: u32, pass: bool, detail: &str) {
    println!(
        "acceptance criterion {number}: {} -- {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {number} failed: {detail}");
}

#[test]
fn criterion_1_golden_orders() {
    let started = Instant::now();
    let grid = GridSpec::default();
    let mut detail = Vec::new();
    let mut pass = true;

    let l = catalog::build("half_plane_L", &Default::default()).unwrap();
    let v = order::lower_order(&l, &grid).unwrap().value;
    pass &= (v - 1.5).abs() <= 1e-9;
    detail.push(format!("mu(L)={v:.12}"));

    // |A_K| >= 3/2 pointwise, but at the deepest dyadic radius the sampled
    // excess over 3/2 (~1e-12) sits below the evaluation noise, which is
    // dominated by the 1/(1-|w|^2) sensitivity to one ulp of the dilatation.
    // The floor therefore gets the same 1e-9 latitude the half-plane check
    // above already grants to an identically-3/2 quantity.
    let k = catalog::build("harmonic_koebe_K", &Default::default()).unwrap();
    let v = order::lower_order(&k, &grid).unwrap().value;
    pass &= (1.5 - 1e-9..=1.51).contains(&v);
    detail.push(format!("mu(K)={v:.12}"));

    let log = catalog::build("log_example", &Default::default()).unwrap();
    let v = order::lower_order(&log, &grid).unwrap().value;
    pass &= (0.499..=0.501).contains(&v);
    detail.push(format!("mu(log)={v:.9}"));

    for n in [2u32, 3, 5] {
        let f = catalog::build("power_map", &CatalogParams { n: Some(n), ..Default::default() })
            .unwrap();
        let v = order::upper_order(&f, &grid).unwrap().value;
        pass &= (1.5 - 1e-3..=1.5).contains(&v);
        detail.push(format!("sup(power{n})={v:.9}"));
    }

    let id = catalog::build("identity", &Default::default()).unwrap();
    let v = order::upper_order(&id, &grid).unwrap().value;
    pass &= (1.0 - 1e-3..=1.0).contains(&v);
    detail.push(format!("sup(id)={v:.9}"));

    let elapsed = started.elapsed().as_secs_f64();
    pass &= elapsed <= 60.0;
    detail.push(format!("{elapsed:.2}s"));
    finish(1, pass, &detail.join(", "));
}

#[test]
fn criterion_2_closed_form_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let one = c(1.0, 0.0);
    let mut pass = true;
    let mut worst_l = 0.0f64;
    let mut worst_k = 0.0f64;

    let l = catalog::build("half_plane_L", &Default::default()).unwrap();
    for _ in 0..1000 {
        let z = random_disk_point(&mut rng, 0.95);
        let got = operators::a_operator(&l, z).unwrap();
        let want = 1.5 * (one - z.conj()) / (one - z);
        worst_l = worst_l.max((got - want).norm());
    }
    pass &= worst_l <= 1e-12;

    let k = catalog::build("harmonic_koebe_K", &Default::default()).unwrap();
    for _ in 0..1000 {
        let z = random_disk_point(&mut rng, 0.95);
        let a = operators::a_operator(&k, z).unwrap();
        // (2/3) A (1 - z^2) = (5/3)(1-|z|^2) + 2i Im z, then the quadratic
        // identity |.|^2 - |1-z^2|^2 = (16/9)(1-|z|^2)^2
        let lhs = 2.0 / 3.0 * a * (one - z * z);
        let residual = lhs.norm_sqr()
            - (one - z * z).norm_sqr()
            - 16.0 / 9.0 * (1.0 - z.norm_sqr()).powi(2);
        worst_k = worst_k.max(residual.abs());
    }
    pass &= worst_k <= 1e-10;

    // On the real axis A(x) = 1 - x/2 (the sign follows from
    // P(x) = (2 + x)/(1 - x^2) and A = ((1-|z|^2)/2) P - conj(z)).
    let log = catalog::build("log_example", &Default::default()).unwrap();
    let mut worst_log = 0.0f64;
    for _ in 0..1000 {
        let x = rng.gen_range(-0.95..0.95);
        let got = operators::a_operator(&log, c(x, 0.0)).unwrap();
        worst_log = worst_log.max((got - c(1.0 - x / 2.0, 0.0)).norm());
    }
    pass &= worst_log <= 1e-12;

    finish(
        2,
        pass,
        &format!("|A_L| dev {worst_l:.2e}, K identity dev {worst_k:.2e}, log dev {worst_log:.2e}"),
    );
}

#[test]
fn criterion_3_invariance_suite() {
    let maps = catalog_maps();
    let mut pass = true;
    let mut detail = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let f = &maps[rng.gen_range(0..maps.len())];
        let l = random_affine(&mut rng);
        let z = random_disk_point(&mut rng, 0.9);
        let lhs = operators::a_operator(&f.postcompose_affine(&l), z).unwrap();
        let rhs = operators::a_operator(f, z).unwrap();
        worst = worst.max((lhs - rhs).norm());
    }
    pass &= worst <= 1e-10;
    detail.push(format!("affine dev {worst:.2e}"));

    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let f = &maps[rng.gen_range(0..maps.len())];
        let sigma = random_automorphism(&mut rng);
        let z = random_disk_point(&mut rng, 0.9);
        let lhs = operators::a_operator(&f.precompose(sigma), z).unwrap();
        let d = sigma.derivative(z);
        let rhs = (d / d.norm()) * operators::a_operator(f, sigma.apply(z)).unwrap();
        worst = worst.max((lhs - rhs).norm());
    }
    pass &= worst <= 1e-9;
    detail.push(format!("automorphism dev {worst:.2e}"));

    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let f = &maps[rng.gen_range(0..maps.len())];
        let a = random_disk_point(&mut rng, 0.7);
        let res = f.koebe_transform(a).unwrap();
        let want = operators::a_operator(f, a).unwrap();
        worst = worst.max((res.half_h0pp0 - want).norm());
    }
    pass &= worst <= 1e-8;
    detail.push(format!("koebe-transform dev {worst:.2e}"));

    finish(3, pass, &detail.join(", "));
}

#[test]
fn criterion_4_differential_geometry_oracle() {
    let maps = catalog_maps();
    let mut pass = true;

    // log-density identity residual at step 1e-5; points kept at |z| <= 0.8 so
    // the centered stencil stays in the well-conditioned part of the disk
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_residual = 0.0f64;
    for f in &maps {
        for _ in 0..200 {
            let z = random_disk_point(&mut rng, 0.8);
            let r = operators::log_density_gradient_check(f, z, 1e-5).unwrap();
            worst_residual = worst_residual.max(r);
        }
    }
    pass &= worst_residual <= 1e-6;

    // Schwarzian closed form vs finite-difference Wirtinger derivative of P
    let mut worst_s = 0.0f64;
    for f in &maps {
        for _ in 0..50 {
            let z = random_disk_point(&mut rng, 0.9);
            let p = operators::pre_schwarzian(f, z).unwrap();
            let dp = operators::wirtinger_fd(|w| operators::pre_schwarzian(f, w), z, 1e-5)
                .unwrap()
                .dz;
            let want = dp - 0.5 * p * p;
            let got = operators::schwarzian(f, z).unwrap();
            worst_s = worst_s.max((got - want).norm());
        }
    }
    pass &= worst_s <= 1e-4;

    finish(
        4,
        pass,
        &format!("log-density residual {worst_residual:.2e}, schwarzian dev {worst_s:.2e}"),
    );
}

#[test]
fn criterion_5_distortion_theorem() {
    let mut pass = true;
    let mut detail = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = f64::INFINITY;
    for (f, alpha) in maps_with_golden_alpha() {
        let pairs: Vec<(Complex, Complex)> = (0..10_000)
            .map(|_| (random_disk_point(&mut rng, 0.95), random_disk_point(&mut rng, 0.95)))
            .collect();
        let report = geometry::verify_distortion(&f, alpha, &pairs, 1e-9).unwrap();
        worst = worst.min(report.worst_margin);
        if !report.pass {
            pass = false;
            detail.push(format!("{} violates at alpha {alpha}", f.label()));
        }
    }
    detail.push(format!("10^4 pairs/map, worst margin {worst:.2e}"));

    // equality cases
    let fa = catalog::build(
        "f_alpha",
        &CatalogParams { alpha: Some(1.5), omega0: Some(c(0.2, 0.0)), ..Default::default() },
    )
    .unwrap();
    let pairs: Vec<_> = [0.2, 0.5, 0.8, 0.95].iter().map(|&r| (c(0.0, 0.0), c(r, 0.0))).collect();
    let report = geometry::verify_distortion(&fa, 1.5, &pairs, 1e-9).unwrap();
    let right_eq = report.pass && report.pairs.iter().all(|p| p.equality_upper);
    pass &= right_eq;
    detail.push(format!("f_alpha right equality: {right_eq}"));

    let l = catalog::build("half_plane_L", &Default::default()).unwrap();
    let pairs: Vec<_> = [0.2, 0.5, 0.8, 0.95].iter().map(|&r| (c(0.0, 0.0), c(-r, 0.0))).collect();
    let report = geometry::verify_distortion(&l, 1.5, &pairs, 1e-9).unwrap();
    let left_eq = report.pass && report.pairs.iter().all(|p| p.equality_lower);
    pass &= left_eq;
    detail.push(format!("L left equality: {left_eq}"));

    // jacobian_bounds(3/2, 1/2) against direct Jacobian ratios
    let (lo, hi) = geometry::jacobian_bounds(1.5, 0.5).unwrap();
    let ratio_hi = fa.jacobian(c(0.5, 0.0)).unwrap() / fa.jacobian(c(0.0, 0.0)).unwrap();
    let ratio_lo = l.jacobian(c(-0.5, 0.0)).unwrap() / l.jacobian(c(0.0, 0.0)).unwrap();
    let bounds_ok = (hi - 48.0).abs() <= 1e-10
        && (lo - 0.5 / 1.5f64.powi(5)).abs() <= 1e-10
        && (ratio_hi - hi).abs() <= 1e-10 * hi
        && (ratio_lo - lo).abs() <= 1e-10;
    pass &= bounds_ok;
    detail.push(format!("jacobian bounds ({lo:.10}, {hi}) attained: {bounds_ok}"));

    finish(5, pass, &detail.join("; "));
}

#[test]
fn criterion_6_trajectory_machinery() {
    let tol = 1e-8;
    let mut pass = true;
    let mut detail = Vec::new();

    // level drift <= 100 tol on every accepted trajectory
    let mut worst_drift = 0.0f64;
    let runs: Vec<(&str, Complex, f64)> = vec![
        ("identity", c(0.5, 0.0), 0.96),
        ("identity", c(0.5, 0.0), 0.4),
        ("half_plane_L", c(0.3, 0.0), 3.0),
        ("half_plane_L", c(0.1, 0.4), 2.0),
        ("half_plane_L", c(-0.2, 0.1), 0.3),
        ("harmonic_koebe_K", c(0.2, 0.3), 2.0),
        ("log_example", c(0.3, -0.2), 1.8),
    ];
    for (name, z0, t_end) in &runs {
        let f = catalog::build(name, &Default::default()).unwrap();
        let traj = geometry::integrate_trajectory(&f, *z0, *t_end, tol).unwrap();
        let drift = geometry::check_level_consistency(&f, &traj).unwrap();
        worst_drift = worst_drift.max(drift);
    }
    pass &= worst_drift <= 100.0 * tol;
    detail.push(format!("worst drift {worst_drift:.2e} (budget {:.0e})", 100.0 * tol));

    // first integral t = 1 - z^2 for the identity map on the real axis
    let id = catalog::build("identity", &Default::default()).unwrap();
    let traj = geometry::integrate_trajectory(&id, c(0.5, 0.0), 0.96, tol).unwrap();
    let z_final = traj.states.last().unwrap().z;
    let integral_ok = (z_final - c(0.2, 0.0)).norm() <= 1e-6
        && traj
            .states
            .iter()
            .all(|s| (s.t - (1.0 - s.z.re * s.z.re)).abs() <= 1e-6);
    pass &= integral_ok;
    detail.push(format!("identity first integral: end {z_final}"));

    // growth bound on L with mu = 1.5
    let l = catalog::build("half_plane_L", &Default::default()).unwrap();
    let mut worst_margin = f64::INFINITY;
    for (z0, t_end) in [(c(0.3, 0.0), 4.0), (c(0.1, 0.4), 2.5), (c(-0.2, 0.1), 0.25)] {
        let traj = geometry::integrate_trajectory(&l, z0, t_end, tol).unwrap();
        let report = geometry::verify_growth_bound(&traj, 1.5, 1e-7).unwrap();
        worst_margin = worst_margin.min(report.min_margin);
        pass &= report.pass;
    }
    detail.push(format!("growth-bound min margin {worst_margin:.2e}"));

    finish(6, pass, &detail.join("; "));
}

#[test]
fn criterion_7_criteria_coherence() {
    use harmap::criteria;

    let zgrid =
        GridSpec { radial: 16, angular: 48, dyadic_depth: 8, refine_iters: 0, refine_tol: 1e-12 };
    let ogrid = GridSpec::default();
    let mut pass = true;
    let mut detail = Vec::new();

    // shc fails on power_map(2) and on the omega(z) = z probe (harmonic Koebe)
    let p2 = catalog::build("power_map", &CatalogParams { n: Some(2), ..Default::default() })
        .unwrap();
    let rep = criteria::shc_check(&p2, &zgrid, 64, 1e-9).unwrap();
    pass &= !rep.pass && rep.witness.is_some();
    detail.push(format!("shc(power_map(2)) fails: {}", !rep.pass));

    let k = catalog::build("harmonic_koebe_K", &Default::default()).unwrap();
    let rep = criteria::shc_check(&k, &zgrid, 64, 1e-9).unwrap();
    pass &= !rep.pass;
    detail.push(format!("shc(omega=z probe) fails: {}", !rep.pass));

    // shc pass implies unit upper order
    let mut shc_ok = true;
    for eps in [c(0.0, 0.0), c(0.5, 0.0), c(0.3, -0.4)] {
        let f = catalog::build(
            "affine_shear",
            &CatalogParams { epsilon: Some(eps), ..Default::default() },
        )
        .unwrap();
        let rep = criteria::shc_check(&f, &zgrid, 64, 1e-9).unwrap();
        let upper = order::upper_order(&f, &ogrid).unwrap().value;
        shc_ok &= rep.pass && upper <= 1.0 + 1e-2;
    }
    pass &= shc_ok;
    detail.push(format!("shc pass => upper <= 1 + 1e-2: {shc_ok}"));

    // NH threshold report for the Moebius example at lambda = 0.5
    let moebius = catalog::build("k_alpha", &CatalogParams { alpha: Some(1.0), ..Default::default() })
        .unwrap();
    let rep = criteria::nh_lambda_check(&moebius, 0.5, &zgrid, 1e-9).unwrap();
    let p0 = operators::pre_schwarzian(&moebius, c(0.0, 0.0)).unwrap().norm();
    let threshold = 2.0 * 0.5f64.sqrt();
    let nh_ok = rep.pass
        && (p0 - 2.0).abs() <= 1e-12
        && rep.notes[0].contains("not below threshold")
        && (threshold - std::f64::consts::SQRT_2).abs() <= 1e-15;
    pass &= nh_ok;
    detail.push(format!("NH threshold report |P(0)|={p0} vs {threshold:.6}: {nh_ok}"));

    finish(7, pass, &detail.join("; "));
}
