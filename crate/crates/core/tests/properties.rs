use std::f64::consts::{FRAC_PI_2, PI};

use logspiral_core::analysis::{monotone_grid, run_battery, verify_f_monotone, BatteryConfig, Suite};
use logspiral_core::closed_form::{
    cos_angle, dk_dcurvature, f, f_prime, k_theta, k_theta_at, k_theta_direct, series_k_small_k, SpiralCurvatureQuery,
    SEAM_TERMS,
};
use logspiral_core::curves::{
    angle_to_parallel, arc_length, geodesic_curvature_numeric, plane_log_spiral, pseudosphere_loxodrome,
    sphere_loxodrome,
};
use logspiral_core::liouville::liouville_breakdown;
use logspiral_core::numdiff::richardson_derivative;
use logspiral_core::polar::{circle_curvature, PolarSpiral};
use logspiral_core::quadrature;
use logspiral_core::surface::{eval_jet, gaussian_curvature, JetMode, SurfacePatch};
use proptest::prelude::*;

fn curved_patch(which: u8, radius: f64) -> SurfacePatch {
    match which {
        0 => SurfacePatch::sphere(radius).unwrap(),
        _ => SurfacePatch::pseudosphere(radius).unwrap(),
    }
}

fn interior_v(which: u8, s: f64) -> f64 {
    match which {
        0 => 0.05 + s * (PI - 0.1),
        _ => 0.02 + s * (1.5 - 0.02),
    }
}

fn max_r(k: f64) -> f64 {
    if k > 0.0 {
        PI / k.sqrt()
    } else {
        f64::INFINITY
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_curvature_ignores_orientation(which in 0u8..2, radius in 0.5f64..2.0, u in -3.0f64..3.0, s in 0.0f64..1.0) {
        let patch = curved_patch(which, radius);
        let v = interior_v(which, s);
        let k = gaussian_curvature(&patch, u, v).unwrap();
        let flipped = patch.clone().with_orientation(patch.orientation().flipped());
        prop_assert!((k - gaussian_curvature(&flipped, u, v).unwrap()).abs() <= 1e-12);
        let expected = patch.known_k().unwrap();
        prop_assert!((k - expected).abs() <= 1e-6 * expected.abs());
    }

    #[test]
    fn finite_difference_jets_track_analytic(which in 0u8..3, radius in 0.5f64..2.0, u in -3.0f64..3.0, s in 0.0f64..1.0) {
        let (patch, v) = match which {
            2 => (SurfacePatch::plane(), 0.1 + 3.0 * s),
            w => (curved_patch(w, radius), interior_v(w, s)),
        };
        let exact = eval_jet(&patch, u, v, JetMode::Analytic).unwrap();
        let approx = eval_jet(&patch, u, v, JetMode::FiniteDifference).unwrap();
        prop_assert!(exact.max_distance(&approx) <= 1e-6 * exact.scale());
    }

    #[test]
    fn curvature_factorizes(k in -4.0f64..4.0, s in 0.01f64..0.99, theta in 0.01f64..3.13) {
        let r = s * max_r(k).min(3.0);
        let q = SpiralCurvatureQuery::new(k, r, theta).unwrap();
        prop_assert_eq!(k_theta(&q).unwrap(), cos_angle(theta) * f(k, r).unwrap());
    }

    #[test]
    fn seam_branches_agree(mag in 0.9e-4f64..1.1e-4, r in 0.1f64..3.0, neg in any::<bool>(), theta in 0.01f64..1.5) {
        let k = if neg { -mag / (r * r) } else { mag / (r * r) };
        let q = SpiralCurvatureQuery::new(k, r, theta).unwrap();
        let direct = k_theta_direct(&q);
        let series = series_k_small_k(k, r, theta, SEAM_TERMS).unwrap();
        prop_assert!((direct - series).abs() <= 1e-12 * direct.abs());
    }

    #[test]
    fn seam_gaps_shrink(r in 0.1f64..3.0, theta in 0.01f64..1.5) {
        let at_zero = k_theta_at(0.0, r, theta).unwrap();
        let mut previous = f64::INFINITY;
        for h in [1e-2, 1e-4, 1e-6] {
            let gap = (k_theta_at(h, r, theta).unwrap() - at_zero)
                .abs()
                .max((k_theta_at(-h, r, theta).unwrap() - at_zero).abs());
            prop_assert!(gap < previous);
            previous = gap;
        }
    }

    #[test]
    fn f_decreases(r in 0.1f64..4.0, s in -1.0f64..1.0) {
        let t = if s < 0.0 { 25.0 * s } else { s * ((PI / r - 1e-3).powi(2)) };
        prop_assert!(f_prime(t, r).unwrap() < 0.0);
    }

    #[test]
    fn k_derivative_matches_differences(k in -4.0f64..4.0, s in 0.05f64..0.9, theta in 0.1f64..1.4) {
        let r = s * max_r(k).min(2.0);
        prop_assume!(k.abs() * r * r > 1e-2);
        let analytic = dk_dcurvature(k, r, theta).unwrap();
        let h = 1e-2 * k.abs().max(0.1);
        let numeric = richardson_derivative(|x| k_theta_at(x, r, theta), k, h, 3).unwrap().value;
        prop_assert!((analytic - numeric).abs() <= 1e-7 * analytic.abs().max(1e-3));
    }

    #[test]
    fn geodesic_circles_match_f(k in -4.0f64..4.0, s in 0.01f64..0.99) {
        let r = s * max_r(k).min(3.0);
        let a = circle_curvature(k, r).unwrap();
        let b = f(k, r).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * b.abs().max(1.0 / r));
    }

    #[test]
    fn polar_angle_matches_quadrature(k in -4.0f64..4.0, s in 0.05f64..0.9, theta in 0.2f64..2.9) {
        let lim = max_r(k).min(3.0);
        let (r0, r1) = (0.05 * lim, s * lim);
        let spiral = PolarSpiral::new(k, theta, r0, 0.0).unwrap();
        let u = spiral.point(r1).unwrap().u;
        let q = quadrature::integrate(|r| Ok(spiral.slope(r)), r0, r1, 1e-12).unwrap();
        prop_assert!((u - q).abs() <= 1e-10 * q.abs().max(1.0));
    }

    #[test]
    fn curvature_flips_with_orientation(a in prop_oneof![-3.0f64..-0.2, 0.2f64..3.0], t in 0.1f64..1.4, radius in 0.5f64..2.0) {
        for curve in [plane_log_spiral(a).unwrap(), sphere_loxodrome(radius, a).unwrap()] {
            let k = geodesic_curvature_numeric(&curve, t).unwrap();
            let reversed = geodesic_curvature_numeric(&curve.reversed(), t).unwrap();
            let other_side = curve.with_surface_orientation(curve.patch().orientation().flipped());
            let flipped = geodesic_curvature_numeric(&other_side, t).unwrap();
            prop_assert!((k + reversed).abs() <= 1e-9 * k.abs().max(1.0));
            prop_assert!((k + flipped).abs() <= 1e-9 * k.abs().max(1.0));
        }
    }

    #[test]
    fn arc_length_adds(a in prop_oneof![-2.0f64..-0.2, 0.2f64..2.0], t0 in 0.05f64..0.5, d1 in 0.01f64..0.5, d2 in 0.01f64..0.5) {
        let (t1, t2) = (t0 + d1, t0 + d1 + d2);
        for curve in [plane_log_spiral(a).unwrap(), sphere_loxodrome(1.5, a).unwrap()] {
            let whole = arc_length(&curve, t0, t2).unwrap();
            let parts = arc_length(&curve, t0, t1).unwrap() + arc_length(&curve, t1, t2).unwrap();
            prop_assert!((whole - parts).abs() <= 1e-10 * whole);
            prop_assert_eq!(arc_length(&curve, t2, t0).unwrap(), -whole);
        }
    }

    #[test]
    fn loxodromes_keep_their_angle(a in 0.2f64..3.0, t in 0.05f64..1.5) {
        let curve = sphere_loxodrome(1.0, a).unwrap();
        let expected = -(1.0 / a).atan();
        prop_assert!((angle_to_parallel(&curve, t).unwrap() - expected).abs() <= 1e-7);
    }

    #[test]
    fn liouville_residual_is_small(a in 0.3f64..3.0, t in 0.1f64..1.4, theta in 0.3f64..2.8, v in 0.05f64..1.5) {
        let lox = sphere_loxodrome(1.0, a).unwrap();
        prop_assert!(liouville_breakdown(&lox, t).unwrap().residual < 1e-5);
        let pseudo = pseudosphere_loxodrome(1.0, theta, 0.0).unwrap();
        let b = liouville_breakdown(&pseudo, v).unwrap();
        prop_assert!(b.residual < 1e-5);
        prop_assert!(b.k2.abs() < 1e-8);
        prop_assert!(b.dtheta_ds.abs() < 1e-7);
    }
}

#[test]
fn f_is_monotone_on_the_standard_grids() {
    for r in [0.25, 1.0, 4.0] {
        assert!(verify_f_monotone(r, &monotone_grid(r, 1000)).unwrap().passed);
    }
}

#[test]
fn pseudosphere_loxodrome_curvature_is_constant() {
    // R = 2, θ = π/3 gives -cos θ / R = -0.25.
    let curve = pseudosphere_loxodrome(2.0, PI / 3.0, 0.0).unwrap();
    for i in 0..20 {
        let v = 0.05 + 1.45 * i as f64 / 19.0;
        assert!((geodesic_curvature_numeric(&curve, v).unwrap() + 0.25).abs() < 1e-5);
    }
    let meridian = pseudosphere_loxodrome(2.0, FRAC_PI_2, 0.3).unwrap();
    assert_eq!(meridian.chart_point(0.4).unwrap().0, 0.3);
}

#[test]
fn reports_are_deterministic_and_named() {
    let cfg = BatteryConfig::default();
    let first = run_battery(Suite::Analysis, &cfg);
    let second = run_battery(Suite::Analysis, &cfg);
    assert_eq!(first, second);
    let json: serde_json::Value = serde_json::from_str(&first[0].to_json()).unwrap();
    for key in ["check_name", "passed", "tolerance", "observations"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    let obs = &json["observations"][0];
    for key in ["input", "expected", "actual", "error"] {
        assert!(obs.get(key).is_some(), "{key}");
    }
    for report in &first {
        let worst = report.observations.iter().map(|o| o.error).fold(0.0, f64::max);
        assert_eq!(report.passed, report.failure.is_none() && worst <= report.tolerance, "{}", report.check_name);
    }
}
