//! Randomized metric and engine properties with a fixed seed.

use hyproj_core::geometry::{
    self, cayley_to_disc, cayley_to_halfplane, cosh_dist, dist_d, dist_h, one_minus_rho_sq,
    rho_h, Angle, HalfPlanePoint,
};
use hyproj_core::projection::{project, ProjectionOptions, ProjectionPolicy};
use hyproj_core::Curve;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn atanh(x: f64) -> f64 {
    0.5 * (2.0 * x / (1.0 - x)).ln_1p()
}

/// Log-uniform modulus in `[lo, hi]`, uniform angle.
fn sample_point(rng: &mut impl Rng, lo: f64, hi: f64) -> HalfPlanePoint {
    let log_r = rng.gen_range(lo.ln()..hi.ln());
    let theta = rng.gen_range(-1.5..1.5);
    HalfPlanePoint::from_log_polar(log_r, theta).unwrap()
}

#[test]
fn metric_identities_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..10_000 {
        let a = sample_point(&mut rng, 1e-3, 1e6);
        let b = sample_point(&mut rng, 1e-3, 1e6);
        let d = dist_h(&a, &b).value();
        let rho = rho_h(&a, &b);
        let omr = one_minus_rho_sq(&a, &b);

        // cosh identity is well conditioned at every sampled distance.
        let ch = cosh_dist(&a, &b);
        assert!((ch - d.cosh()).abs() <= 1e-12 * ch, "cosh identity");

        // The atanh and 1 - rho^2 identities are checked in f64 where the
        // reconstruction from the rounded rho is itself well conditioned;
        // closer to the boundary the complementary form takes over.
        if rho <= 0.999 {
            assert!((d - atanh(rho)).abs() <= 1e-12 * d.max(1e-300), "atanh identity");
            assert!(
                (omr - (1.0 - rho * rho)).abs() <= 1e-12 * omr,
                "one_minus_rho_sq identity"
            );
        } else {
            assert!((rho * rho + omr - 1.0).abs() <= 1e-12, "complementary identity");
        }
    }
}

#[test]
fn metric_axioms_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1_000 {
        let a = sample_point(&mut rng, 1e-3, 1e6);
        let b = sample_point(&mut rng, 1e-3, 1e6);
        let c = sample_point(&mut rng, 1e-3, 1e6);
        let dab = dist_h(&a, &b).value();
        let dba = dist_h(&b, &a).value();
        assert!((dab - dba).abs() <= 1e-14 * dab.max(1.0), "symmetry");
        assert!(dist_h(&a, &a).value() == 0.0, "identity of indiscernibles");
        let slack = dist_h(&a, &b).value() + dist_h(&b, &c).value() - dist_h(&a, &c).value();
        assert!(slack >= -1e-12, "triangle inequality, slack {slack}");
    }
}

#[test]
fn mobius_invariance() {
    // z -> a z + i b with a > 0, b real is an isometry of H fixing infinity.
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1_000 {
        let z = sample_point(&mut rng, 1e-2, 1e4);
        let w = sample_point(&mut rng, 1e-2, 1e4);
        let a = (rng.gen_range(-2.0..2.0_f64)).exp();
        let b = rng.gen_range(-100.0..100.0);
        let tz = HalfPlanePoint::new(a * z.re(), a * z.im() + b).unwrap();
        let tw = HalfPlanePoint::new(a * w.re(), a * w.im() + b).unwrap();
        let before = dist_h(&z, &w).value();
        let after = dist_h(&tz, &tw).value();
        // Rounding of `a Im z + b` perturbs the argument of the image by
        // about eps * (|a Im z| + |b|) / Re(a z); budget for it on both
        // endpoints on top of the relative tolerance.
        let cond = ((a * z.im()).abs() + b.abs()) / tz.re()
            + ((a * w.im()).abs() + b.abs()) / tw.re();
        let tol = 1e-12 * before.max(1.0) + 1e-15 * cond;
        assert!((before - after).abs() <= tol, "gap {:e}, tol {tol:e}", (before - after).abs());
    }
}

#[test]
fn cayley_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1_000 {
        let z = sample_point(&mut rng, 1e-2, 1e2);
        let w = sample_point(&mut rng, 1e-2, 1e2);
        let back = cayley_to_halfplane(&cayley_to_disc(&z));
        assert!((back.re() - z.re()).abs() <= 1e-12 * z.abs());
        assert!((back.im() - z.im()).abs() <= 1e-12 * z.abs());
        let dh = dist_h(&z, &w).value();
        let dd = dist_d(&cayley_to_disc(&z), &cayley_to_disc(&w)).value();
        assert!((dh - dd).abs() <= 1e-11 * dh.max(1.0));
    }
}

#[test]
fn logpolar_route_agrees_with_cartesian() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..2_000 {
        let a = sample_point(&mut rng, 1e-3, 1e6);
        let b = sample_point(&mut rng, 1e-3, 1e6);
        let d = dist_h(&a, &b).value();
        let dlp =
            geometry::dist_h_logpolar(a.log_r(), a.theta(), b.log_r(), b.theta()).value();
        assert!((d - dlp).abs() <= 1e-13 * d.max(1.0));
    }
}

#[test]
fn ray_projection_is_the_grid_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let theta = Angle::new(rng.gen_range(-1.4..1.4)).unwrap();
        let z = sample_point(&mut rng, 1.0, 1e3);
        let p = geometry::project_to_ray(&z, theta, 1e-3);
        let dp = dist_h(&z, &p).value();
        for k in 0..200 {
            let log_r = -3.0 + 10.0 * k as f64 / 199.0;
            let q = HalfPlanePoint::from_log_polar(log_r, theta.radians()).unwrap();
            assert!(dp <= dist_h(&z, &q).value() + 1e-12);
        }
    }
}

#[test]
fn sector_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let theta = Angle::new(rng.gen_range(-1.2..1.2)).unwrap();
        let radius = geometry::HypDistance::new(rng.gen_range(0.01..3.0)).unwrap();
        let (lo, hi) = geometry::sector_halfwidth(theta, radius);
        for edge in [lo, hi] {
            if edge.abs() >= core::f64::consts::FRAC_PI_2 {
                continue; // unattainable marker
            }
            let d = geometry::dist_angles(theta, Angle::new(edge).unwrap()).value();
            assert!((d - radius.value()).abs() <= 1e-10, "edge angle distance");
        }
    }
}

#[test]
fn numeric_projection_matches_ray_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = ProjectionOptions::default();
    for i in 0..100 {
        let theta = Angle::new(rng.gen_range(-1.3..1.3)).unwrap();
        let c = Curve::radial_ray(theta, 1.0);
        let z = sample_point(&mut rng, 1.0, 1e6);
        let r = project(&c, &z, &opts, &ProjectionPolicy::Last).unwrap();
        let oracle = c.analytic_projection(&z).unwrap();
        let gap = dist_h(&r.chosen.point, &oracle).value();
        assert!(gap <= 1e-9, "query {i}: gap {gap:e}");
    }
}

#[test]
fn global_distance_is_a_lower_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let curve = Curve::example(hyproj_core::ExampleId::Ex31, 6).unwrap();
    let z = HalfPlanePoint::from_log_polar(50.0f64.ln(), 0.01).unwrap();
    let r = project(&curve, &z, &ProjectionOptions::default(), &ProjectionPolicy::Last).unwrap();
    let t_hi = 16.0 * 50.0;
    for _ in 0..10_000 {
        let t = rng.gen_range(0.0..t_hi);
        let p = curve.eval(t).unwrap();
        assert!(r.global_distance.value() <= dist_h(&z, &p).value() + 1e-9);
    }
}

proptest! {
    #[test]
    fn prop_symmetry_and_positivity(
        lr1 in -6.0..6.0f64, th1 in -1.5..1.5f64,
        lr2 in -6.0..6.0f64, th2 in -1.5..1.5f64,
    ) {
        let a = HalfPlanePoint::from_log_polar(lr1, th1).unwrap();
        let b = HalfPlanePoint::from_log_polar(lr2, th2).unwrap();
        let dab = dist_h(&a, &b).value();
        let dba = dist_h(&b, &a).value();
        prop_assert!(dab >= 0.0);
        prop_assert!((dab - dba).abs() <= 1e-13 * dab.max(1.0));
    }

    #[test]
    fn prop_triangle(
        lr1 in -4.0..4.0f64, th1 in -1.4..1.4f64,
        lr2 in -4.0..4.0f64, th2 in -1.4..1.4f64,
        lr3 in -4.0..4.0f64, th3 in -1.4..1.4f64,
    ) {
        let a = HalfPlanePoint::from_log_polar(lr1, th1).unwrap();
        let b = HalfPlanePoint::from_log_polar(lr2, th2).unwrap();
        let c = HalfPlanePoint::from_log_polar(lr3, th3).unwrap();
        let slack = dist_h(&a, &b).value() + dist_h(&b, &c).value() - dist_h(&a, &c).value();
        prop_assert!(slack >= -1e-12);
    }
}
