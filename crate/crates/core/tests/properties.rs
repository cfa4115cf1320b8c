mod common;

use proptest::prelude::*;
use reachlab_core::maps::{self, BumpProfile, LinearMapSpec, SmoothMap};
use reachlab_core::metrics;
use reachlab_core::reach;
use reachlab_core::verify::{self, CheckSettings};
use reachlab_core::zoo::{self, ZooSpec};
use reachlab_core::{ParametricManifold, SampleStrategy, Subspace};
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

fn curve_zoo() -> Vec<ParametricManifold> {
    vec![
        zoo::unit_circle(),
        zoo::ellipse(3.0, 0.5).unwrap(),
        zoo::tilted_circle(PI / 6.0),
        zoo::trefoil(),
        zoo::segment(),
    ]
}

fn any_zoo() -> impl Strategy<Value = ParametricManifold> {
    (0..ZooSpec::catalog().len()).prop_map(|i| ZooSpec::catalog()[i].build().unwrap())
}

fn any_curve() -> impl Strategy<Value = ParametricManifold> {
    (0..5usize).prop_map(|i| curve_zoo().swap_remove(i))
}

/// Random subspace of dimension `d` in R^n from a seeded Gaussian matrix.
fn random_subspace(n: usize, d: usize, seed: u64) -> Subspace {
    let g = maps::make_gaussian_map(n, d, seed);
    Subspace::from_spanning(g.matrix()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn principal_angle_is_symmetric_for_equal_dims(n in 2usize..7, d in 1usize..4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let d = d.min(n - 1);
        let a = random_subspace(n, d, s1);
        let b = random_subspace(n, d, s2);
        let ab = metrics::principal_angle_cos(&a, &b).unwrap();
        let ba = metrics::principal_angle_cos(&b, &a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12, "{ab} vs {ba}");
        prop_assert!((0.0..=1.0).contains(&ab));
    }

    #[test]
    fn principal_angle_is_orthogonally_invariant(n in 2usize..7, d in 1usize..4, s1 in any::<u64>(), s2 in any::<u64>(), q in 1u64..u64::MAX) {
        let d = d.min(n - 1);
        let a = random_subspace(n, d, s1);
        let b = random_subspace(n, d, s2);
        let rot = maps::make_orthogonal_map(n, q);
        let before = metrics::principal_angle_cos(&a, &b).unwrap();
        let after = metrics::principal_angle_cos(
            &a.transformed(rot.matrix()).unwrap(),
            &b.transformed(rot.matrix()).unwrap(),
        ).unwrap();
        prop_assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn tangent_and_normal_are_complementary(m in any_zoo(), s in 0.05f64..0.95) {
        let t: Vec<f64> = m.domain().iter().map(|a| a.lo + s * (a.hi - a.lo)).collect();
        let tan = m.tangent_space(&t).unwrap();
        let nor = tan.complement().unwrap();
        prop_assert_eq!(tan.dim() + nor.dim(), m.ambient_dim());
        let cross = tan.basis().transpose() * nor.basis();
        prop_assert!(cross.abs().max() < 1e-12);
    }

    #[test]
    fn analytic_and_fd_tangents_agree(m in any_zoo(), s in 0.05f64..0.95) {
        let t: Vec<f64> = m.domain().iter().map(|a| a.lo + s * (a.hi - a.lo)).collect();
        let analytic = m.tangent_space(&t).unwrap();
        let fd = m.clone().without_jacobian().tangent_space(&t).unwrap();
        let c = metrics::principal_angle_cos(&analytic, &fd).unwrap();
        prop_assert!(c.min(1.0).acos() < 1e-5, "angle {}", c.min(1.0).acos());
    }

    #[test]
    fn geodesic_dominates_chord(m in any_curve(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let ax = m.domain()[0];
        let (t1, t2) = (ax.lo + a * ax.len(), ax.lo + b * ax.len());
        let g = metrics::geodesic_distance(&m, t1, t2).unwrap();
        let chord = (m.point(&[t1]) - m.point(&[t2])).norm();
        prop_assert!(g >= chord - 1e-9, "geodesic {g} < chord {chord}");
    }

    #[test]
    fn bump_is_odd_and_bounded(x in -0.999f64..0.999, delta in 0.05f64..0.9, frac in 0.01f64..0.49) {
        let rho = frac * delta;
        let f = maps::bump_f(x, delta, rho).unwrap();
        prop_assert_eq!(f, -maps::bump_f(-x, delta, rho).unwrap());
        prop_assert!((-1.0..=1.0).contains(&f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn estimator_shrinks_on_supersets(m in any_curve(), keep in proptest::collection::vec(any::<bool>(), 256)) {
        let full = m.sample(256, SampleStrategy::UniformGrid, 0).unwrap();
        let idx: Vec<usize> = (0..256).filter(|&i| keep[i]).collect();
        prop_assume!(idx.len() >= 2);
        let sub = full.select(&idx).unwrap();
        let r_full = reach::estimate_reach(&full).unwrap().value;
        let r_sub = reach::estimate_reach(&sub).unwrap().value;
        prop_assert!(r_sub >= r_full, "{r_sub:?} < {r_full:?}");
    }

    #[test]
    fn scaling_covariance(m in any_curve(), s in 0.1f64..10.0) {
        let base = m.sample(512, SampleStrategy::UniformGrid, 0).unwrap();
        let scaled = base.scaled(s);
        let d0 = metrics::diameter(&base);
        prop_assert!((metrics::diameter(&scaled) - s * d0).abs() <= 1e-9 * s * d0);

        let r0 = reach::estimate_reach(&base).unwrap().value;
        let r1 = reach::estimate_reach(&scaled).unwrap().value;
        if r0.is_infinite() {
            prop_assert!(r1.is_infinite());
        } else {
            prop_assert!(common::rel_err(r1.value(), s * r0.value()) < 1e-9);
        }

        let v0 = metrics::volume_k(&m).unwrap();
        let v1 = metrics::volume_k(&m.scaled(s)).unwrap();
        prop_assert!(common::rel_err(v1, s * v0) < 1e-9);
    }

    #[test]
    fn isometry_constants_scale_with_the_map(seed in any::<u64>(), alpha in 0.1f64..10.0) {
        let sample = zoo::trefoil().sample(300, SampleStrategy::UniformGrid, 0).unwrap();
        let g = maps::make_gaussian_map(3, 3, seed);
        let base = maps::isometry_constants(&g, &sample).unwrap();
        let scaled = maps::isometry_constants(&g.scaled(alpha).unwrap(), &sample).unwrap();
        prop_assert!(common::rel_err(scaled.l, alpha * base.l) < 1e-12);
        prop_assert!(common::rel_err(scaled.u, alpha * base.u) < 1e-12);
        prop_assert_eq!(scaled.min_pair, base.min_pair);
    }

    #[test]
    fn linear_ratios_lie_within_singular_values(m in any_zoo(), seed in any::<u64>()) {
        let sample = m.sample(400, SampleStrategy::UniformGrid, 0).unwrap();
        let n = m.ambient_dim();
        let g = maps::make_gaussian_map(n, n, seed);
        let iso = maps::isometry_constants(&g, &sample).unwrap();
        prop_assert!(iso.l >= g.sigma_min() * (1.0 - 1e-12));
        prop_assert!(iso.u <= g.sigma_max() * (1.0 + 1e-12));
        prop_assert!(iso.l <= iso.u);
        prop_assert_eq!(iso.delta, maps::isometry_delta(iso.l, iso.u));
        prop_assert!(iso.delta >= 0.0);
    }

    #[test]
    fn tangent_lengths_are_sandwiched(m in any_curve(), seed in any::<u64>()) {
        let sample = m.sample(4096, SampleStrategy::UniformGrid, 0).unwrap();
        let n = m.ambient_dim();
        let g = maps::make_gaussian_map(n, n, seed);
        let iso = maps::isometry_constants(&g, &sample).unwrap();
        for (x, t) in sample.points().iter().zip(sample.tangents()) {
            let jt = g.jacobian(x.as_slice()) * t.basis();
            for c in 0..t.dim() {
                let len = jt.column(c).norm();
                prop_assert!(len >= iso.l * (1.0 - 1e-6), "{len} < l = {}", iso.l);
                prop_assert!(len <= iso.u * (1.0 + 1e-6), "{len} > u = {}", iso.u);
            }
        }
    }

    #[test]
    fn sandwich_for_random_linear_maps(m in any_zoo(), seed in any::<u64>(), square in any::<bool>()) {
        let n = m.ambient_dim();
        let rows = if square { n } else { (n + 1).max(m.intrinsic_dim()) };
        let g = maps::make_gaussian_map(rows, n, seed);
        let settings = CheckSettings { slack: 1e-9, ..CheckSettings::default() };
        let r = verify::check_basic_properties(&m, Arc::new(g), 1024, 0, &settings).unwrap();
        prop_assert!(r.passed, "{:?}", r.failed_conditions().collect::<Vec<_>>());
    }
}

#[test]
fn bump_is_continuous_at_its_breakpoints() {
    for (delta, rho) in [(0.1, 0.01), (0.5, 0.2), (0.9, 0.05)] {
        let b = BumpProfile::new(delta, rho).unwrap();
        for x in b.breakpoints() {
            let jump = (b.eval(x + 1e-9) - b.eval(x - 1e-9)).abs();
            assert!(jump < 1e-6, "jump {jump} at {x}");
        }
    }
}

#[test]
fn closed_and_numeric_ellipse_curvature_agree() {
    let m = zoo::ellipse(3.0, 0.5).unwrap();
    for i in 0..64 {
        let t = TAU * i as f64 / 64.0;
        let kappa = reach::curve_curvature(&m, t).unwrap();
        assert!(common::rel_err(kappa, common::ellipse_curvature(3.0, 0.5, t)) < 1e-6);
    }
    let (kmax, _) = reach::max_curve_curvature(&m, 4096).unwrap();
    assert!(common::rel_err(kmax, reach::ellipsoid_max_curvature(&[3.0, 0.5]).unwrap()) < 1e-6);
}

#[test]
fn closed_and_numeric_ellipsoid_curvature_agree() {
    let radii = [2.0, 1.0, 0.5];
    let m = zoo::ellipsoid(&radii).unwrap();
    let mut kmax = 0.0_f64;
    for i in 1..40 {
        for j in 0..40 {
            let (u, v) = (PI * i as f64 / 40.0, TAU * j as f64 / 40.0);
            let (k1, k2) = common::surface_principal_curvatures(&m, u, v);
            let x = m.point(&[u, v]);
            let gauss = common::ellipsoid_gaussian_curvature(radii, [x[0], x[1], x[2]]);
            assert!(common::rel_err(k1 * k2, gauss) < 1e-5, "K at ({u}, {v})");
            kmax = kmax.max(k1);
        }
    }
    // (u, v) = (π/2, 0) is on the grid: the end of the major axis.
    let closed = reach::ellipsoid_max_curvature(&radii).unwrap();
    assert!(common::rel_err(kmax, closed) < 1e-5, "{kmax} vs {closed}");
    let (k1, k2) = common::surface_principal_curvatures(&m, PI / 2.0, 0.0);
    assert!(common::rel_err(k1, 8.0) < 1e-5 && common::rel_err(k2, 2.0) < 1e-5);
}

#[test]
fn circle_bundle_test_brackets_the_reach() {
    let s = zoo::unit_circle().sample(1024, SampleStrategy::UniformGrid, 0).unwrap();
    let est = reach::bundle_reach_estimate(&s, 4.0, 4, 9, 20);
    assert!((est.value.value() - 1.0).abs() < 0.05, "{est:?}");
}

#[test]
fn identity_pushforward_is_bitwise() {
    for m in curve_zoo() {
        let s = m.sample(200, SampleStrategy::UniformGrid, 0).unwrap();
        let id = LinearMapSpec::identity(m.ambient_dim());
        assert_eq!(maps::pushforward(&id, &s).unwrap().tangents(), s.tangents());
    }
}
