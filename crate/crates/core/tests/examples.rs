mod common;

use approx::assert_relative_eq;
use reachlab_core::maps::{self, LinearMapSpec};
use reachlab_core::reach::{self, ReachValue};
use reachlab_core::verify::{self, CheckSettings};
use reachlab_core::{zoo, SampleStrategy};
use std::f64::consts::PI;
use std::sync::Arc;

fn settings() -> CheckSettings {
    CheckSettings::default()
}

#[test]
fn projection_of_tilted_circle_has_constants_cos_theta_and_one() {
    let s = zoo::tilted_circle(PI / 6.0).sample(4096, SampleStrategy::UniformGrid, 0).unwrap();
    let p = LinearMapSpec::projection(2, 3).unwrap();
    let r = maps::isometry_constants(&p, &s).unwrap();
    assert_relative_eq!(r.l, (PI / 6.0).cos(), max_relative = 0.01);
    assert_relative_eq!(r.u, 1.0, max_relative = 0.01);
}

#[test]
fn gaussian_singular_values_cluster() {
    let (m, n) = (100, 1000);
    let centre = (n as f64 / m as f64).sqrt();
    let inside = (0..100u64)
        .filter(|&seed| {
            let g = maps::make_gaussian_map(m, n, seed);
            g.singular_values().iter().all(|s| (s - centre).abs() <= 1.3)
        })
        .count();
    assert!(inside >= 99, "{inside}/100 seeds inside the band");
}

#[test]
fn orthogonal_maps_keep_the_reach_estimate() {
    let s = zoo::trefoil().sample(1024, SampleStrategy::UniformGrid, 0).unwrap();
    let q = maps::make_orthogonal_map(3, 17);
    let before = reach::estimate_reach(&s).unwrap().value.value();
    let after = reach::estimate_reach(&maps::pushforward(&q, &s).unwrap()).unwrap().value.value();
    assert!(common::rel_err(after, before) < 1e-10);
}

#[test]
fn counterexample_heights() {
    let cm = maps::counterexample_map(0.1, 0.05, 0.01).unwrap();
    for i in 0..=400 {
        let x = -1.0 + 2.0 * i as f64 / 400.0;
        let h = cm.height(x);
        if x.abs() >= 0.1 {
            assert_eq!(h, 0.0);
        }
        assert!(h >= -1e-12 && h <= cm.triangle_height(x) + 1e-12, "x = {x}");
        assert!((h - cm.height(-x)).abs() < 1e-9, "symmetry at {x}");
    }
    // Peak height: c/δ times the area under |f| on (0, δ), i.e. c(1 − ρ(2 − A)/δ)
    // with A the area under one unit ramp.
    let ramp_area = reachlab_core::quadrature::adaptive_simpson(
        &|s: f64| if s.abs() < 1.0 { (1.0 - 1.0 / (1.0 - s * s)).exp() } else { 0.0 },
        -1.0,
        0.0,
        1e-12,
    );
    let expected = 0.05 / 0.1 * (0.1 - 2.0 * 0.01 + 2.0 * 0.01 * ramp_area);
    assert!((cm.height(0.0) - expected).abs() < 1e-9, "{} vs {expected}", cm.height(0.0));
}

#[test]
fn bump_examples() {
    assert_eq!(maps::bump_f(0.01, 0.1, 0.01).unwrap(), -1.0);
    assert_eq!(maps::bump_f(0.1, 0.1, 0.01).unwrap(), 0.0);
    let mut rng = reachlab_core::rng::stream(3, 0);
    for _ in 0..100 {
        let x: f64 = rand::Rng::random_range(&mut rng, -0.99..0.99);
        assert_eq!(maps::bump_f(-x, 0.1, 0.01).unwrap(), -maps::bump_f(x, 0.1, 0.01).unwrap());
    }
}

#[test]
fn basic_properties_examples() {
    let s = settings();
    let circle = zoo::unit_circle();
    let d = Arc::new(LinearMapSpec::diag(&[3.0, 0.5]).unwrap());
    let r = verify::check_basic_properties(&circle, d, 4096, 0, &s).unwrap();
    assert!(r.passed);
    assert_relative_eq!(r.measured["diameter_image"], 6.0, max_relative = 1e-6);
    assert_relative_eq!(r.bound["diameter_lower"], 1.0, max_relative = 1e-3);
    assert_relative_eq!(r.bound["diameter_upper"], 6.0, max_relative = 1e-3);

    let trefoil = zoo::trefoil();
    let q = Arc::new(maps::make_orthogonal_map(3, 5));
    let r = verify::check_basic_properties(&trefoil, q, 2048, 0, &s).unwrap();
    assert!(r.passed);
    assert!(common::rel_err(r.measured["diameter_image"], r.measured["diameter"]) < 1e-9);
    assert!(common::rel_err(r.measured["volume_image"], r.measured["volume"]) < 1e-9);

    let tilted = zoo::tilted_circle(PI / 6.0);
    let g = Arc::new(maps::make_gaussian_map(2, 3, 8));
    assert!(verify::check_basic_properties(&tilted, g, 2048, 0, &s).unwrap().passed);
}

#[test]
fn angle_examples() {
    let s = settings();
    let r = verify::check_angles_exact(&zoo::unit_circle(), &maps::make_orthogonal_map(2, 4), 2048, 100, 1, &s).unwrap();
    assert!(r.passed);
    let sphere = zoo::sphere(1.0).unwrap();
    let r = verify::check_angles_exact(&sphere, &maps::make_orthogonal_map(3, 4), 4096, 100, 1, &s).unwrap();
    assert!(r.passed);

    let q = maps::make_orthogonal_map(2, 6);
    let r = verify::check_angle_bound(&zoo::unit_circle(), &q, 1024, 500, 2, &s).unwrap();
    assert!(r.passed);
    assert!(r.measured["max_cos_change"] < 1e-12);
    assert!(r.measured["delta"].abs() < 1e-12);
}

#[test]
fn reach_exact_examples() {
    let s = settings();
    let id = LinearMapSpec::identity(2);
    let r = verify::check_reach_exact(&zoo::ellipse(3.0, 0.5).unwrap(), &id, 2048, 0, &s).unwrap();
    assert!(r.passed);
    assert_eq!(r.measured["abs_difference"], 0.0);

    let r = verify::check_reach_exact(&zoo::unit_circle(), &maps::make_orthogonal_map(2, 3), 2048, 0, &s).unwrap();
    assert!(r.passed);
    assert_relative_eq!(r.measured["reach_image"], 1.0, max_relative = 1e-3);

    let r = verify::check_reach_exact(&zoo::trefoil(), &maps::make_orthogonal_map(3, 3), 2048, 0, &s).unwrap();
    assert!(r.passed);
}

#[test]
fn counterexample_with_steep_tent() {
    let r = verify::run_counterexample(0.1, 0.05, 0.01, 4096, &settings()).unwrap();
    assert!(r.passed, "{:?}", r.failed_conditions().collect::<Vec<_>>());
    assert!(r.measured["u"] > 1.0 && r.measured["u"] <= 1.5 + 1e-6);
    assert!(r.measured["reach"].is_infinite());
    assert!(r.measured["reach_image"] <= 0.0722);
}

/// At c = 0.001 the tent is so flat that its bends have curvature of order
/// one, and the origin has a unique nearest point on the curve. The measured
/// reach is therefore far above δ/√2 and the cap condition fails.
#[test]
fn counterexample_with_flat_tent_exceeds_the_cap() {
    let r = verify::run_counterexample(0.1, 0.001, 0.01, 4096, &settings()).unwrap();
    assert!(r.measured["u"] <= 1.01 + 1e-6);
    assert!(r.measured["l"] >= 1.0 - 1e-9);
    assert!(r.measured["reach_image"] > 0.3, "{}", r.measured["reach_image"]);
    let failed: Vec<_> = r.failed_conditions().map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["image_reach_capped"]);
    assert!(!r.passed);
}

#[test]
fn reach_lower_bound_examples() {
    let s = settings();
    let circle = zoo::unit_circle();
    let d = LinearMapSpec::diag(&[3.0, 0.5]).unwrap();
    let r = verify::check_reach_lower_bound(&circle, &d, 8192, 0, &s).unwrap();
    assert!(r.passed);
    assert_relative_eq!(r.bound["reach_image"], 1.0 / 12.0, max_relative = 1e-12);
    assert_relative_eq!(r.measured["ratio"], 1.0, max_relative = 0.02);

    let tilted = zoo::tilted_circle(PI / 6.0);
    let p = LinearMapSpec::projection(2, 3).unwrap();
    let r = verify::check_reach_lower_bound(&tilted, &p, 8192, 0, &s).unwrap();
    assert!(r.passed);
    assert_relative_eq!(r.bound["reach_image"], 0.75, max_relative = 1e-9);
    assert_relative_eq!(r.measured["ratio"], 1.0, max_relative = 0.02);

    let a = LinearMapSpec::from_rows(&[vec![2.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
    let r = verify::check_reach_lower_bound(&tilted, &a, 8192, 0, &s).unwrap();
    assert!(r.passed);
    assert_relative_eq!(r.bound["reach_image"], 3.0 / 32.0, max_relative = 1e-9);
    assert_relative_eq!(r.measured["reach_image"], 3.0 / 8.0, max_relative = 0.02);
    assert_relative_eq!(r.measured["ratio"], 4.0, max_relative = 0.02);
}

#[test]
fn random_projection_square_case() {
    // m = n: padded circle in R^4 seen through 4×4 Gaussian maps.
    let m = zoo::padded(&zoo::unit_circle(), 4, 2).unwrap();
    let reports = verify::random_projection_experiment(&m, 4, 20, 512, 5, &settings()).unwrap();
    assert_eq!(reports.len(), 21);
    assert!(reports[..20].iter().all(|r| r.passed));
}

#[test]
fn source_reach_falls_back_to_the_estimate() {
    let r = verify::check_reach_lower_bound(&zoo::trefoil(), &maps::make_gaussian_map(3, 3, 1), 1024, 0, &settings()).unwrap();
    assert!(r.notes.iter().any(|n| n.contains("sampled-estimate")));
    let r = verify::check_reach_lower_bound(&zoo::unit_circle(), &LinearMapSpec::identity(2), 1024, 0, &settings()).unwrap();
    assert!(r.notes.iter().any(|n| n.contains("closed-form")));
    assert_eq!(zoo::segment().known_reach(), Some(ReachValue::Infinite));
}
