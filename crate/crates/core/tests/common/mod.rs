//! Independent numeric oracles shared by the integration tests.

#![allow(dead_code)]

use nalgebra::{Matrix2, Vector3};
use reachlab_core::ParametricManifold;

/// Principal curvatures of a surface in R³ at parameter `(u, v)`, from
/// finite-difference first and second derivatives of the chart itself (no
/// Jacobian closure involved).
pub fn surface_principal_curvatures(m: &ParametricManifold, u: f64, v: f64) -> (f64, f64) {
    assert_eq!(m.ambient_dim(), 3);
    assert_eq!(m.intrinsic_dim(), 2);
    let h = 1e-4;
    let p = |a: f64, b: f64| {
        let x = m.point(&[a, b]);
        Vector3::new(x[0], x[1], x[2])
    };
    let x0 = p(u, v);
    let xu = (p(u + h, v) - p(u - h, v)) / (2.0 * h);
    let xv = (p(u, v + h) - p(u, v - h)) / (2.0 * h);
    let xuu = (p(u + h, v) - 2.0 * x0 + p(u - h, v)) / (h * h);
    let xvv = (p(u, v + h) - 2.0 * x0 + p(u, v - h)) / (h * h);
    let xuv = (p(u + h, v + h) - p(u + h, v - h) - p(u - h, v + h) + p(u - h, v - h)) / (4.0 * h * h);
    let n = xu.cross(&xv).normalize();
    let first = Matrix2::new(xu.dot(&xu), xu.dot(&xv), xu.dot(&xv), xv.dot(&xv));
    let second = Matrix2::new(xuu.dot(&n), xuv.dot(&n), xuv.dot(&n), xvv.dot(&n));
    let shape = first.try_inverse().expect("regular chart") * second;
    // Eigenvalues of a 2×2 matrix from trace and determinant.
    let (tr, det) = (shape.trace(), shape.determinant());
    let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
    let (k1, k2) = (0.5 * tr + disc, 0.5 * tr - disc);
    if k1.abs() >= k2.abs() {
        (k1.abs(), k2.abs())
    } else {
        (k2.abs(), k1.abs())
    }
}

/// Gaussian curvature of the ellipsoid `x²/a² + y²/b² + z²/c² = 1` at a point
/// on it: `1 / (a² b² c² (x²/a⁴ + y²/b⁴ + z²/c⁴)²)`.
pub fn ellipsoid_gaussian_curvature(radii: [f64; 3], x: [f64; 3]) -> f64 {
    let [a, b, c] = radii;
    let s = x[0] * x[0] / a.powi(4) + x[1] * x[1] / b.powi(4) + x[2] * x[2] / c.powi(4);
    1.0 / (a * a * b * b * c * c * s * s)
}

/// Curvature of the plane ellipse `(a cos t, b sin t)`: `ab / (a² sin² t + b² cos² t)^{3/2}`.
pub fn ellipse_curvature(a: f64, b: f64, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    a * b / (a * a * s * s + b * b * c * c).powf(1.5)
}

pub fn rel_err(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}
