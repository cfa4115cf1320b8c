//! Diameter, k-volume, geodesic distance on curves, and principal angles.

use alloc::vec::Vec;

use nalgebra::DMatrix;

// Float math for no_std; redundant once std is linked in.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg;
use crate::manifold::{ParametricManifold, SampledManifold, Subspace};
use crate::par;
use crate::quadrature::CompositeRule;

/// Sample-level summary of a manifold.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MetricSummary {
    pub diameter: f64,
    /// `None` for `k > 2`.
    pub volume_k: Option<f64>,
    pub intrinsic_dim: usize,
}

/// Largest pairwise distance in the sample.
pub fn diameter(m: &SampledManifold) -> f64 {
    diameter_of(m.points().iter().map(|p| p.as_slice()).collect::<Vec<_>>().as_slice())
}

/// Largest pairwise distance among `points`; zero for fewer than two.
pub fn diameter_of(points: &[&[f64]]) -> f64 {
    par::map_range(points.len(), |i| {
        let mut best = 0.0_f64;
        for q in &points[i + 1..] {
            best = best.max(linalg::dist(points[i], q));
        }
        best
    })
    .into_iter()
    .fold(0.0, f64::max)
}

/// Gauss-Legendre rule per parameter axis for surfaces: 16 nodes, 32 cells.
pub fn default_surface_rule() -> CompositeRule {
    CompositeRule::new(16, 32)
}

/// k-dimensional volume of the parametric manifold, by quadrature of the
/// Jacobian's volume element. Curves use [`CompositeRule::default`], surfaces
/// [`default_surface_rule`].
pub fn volume_k(manifold: &ParametricManifold) -> Result<f64> {
    match manifold.intrinsic_dim() {
        1 => volume_k_with(manifold, &CompositeRule::default()),
        _ => volume_k_with(manifold, &default_surface_rule()),
    }
}

pub fn volume_k_with(manifold: &ParametricManifold, rule: &CompositeRule) -> Result<f64> {
    let dom = manifold.domain();
    match manifold.intrinsic_dim() {
        1 => {
            let nodes = rule.points(dom[0].lo, dom[0].hi);
            let vals = par::map_range(nodes.len(), |i| {
                let (t, w) = nodes[i];
                w * manifold.jacobian_at(&[t]).column(0).norm()
            });
            Ok(vals.into_iter().sum())
        }
        2 => {
            let u = rule.points(dom[0].lo, dom[0].hi);
            let v = rule.points(dom[1].lo, dom[1].hi);
            let rows = par::map_range(u.len(), |i| {
                let (a, wa) = u[i];
                let mut acc = 0.0;
                for &(b, wb) in &v {
                    let j = manifold.jacobian_at(&[a, b]);
                    let g = j.transpose() * &j;
                    let det = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
                    acc += wb * det.max(0.0).sqrt();
                }
                wa * acc
            });
            Ok(rows.into_iter().sum())
        }
        k => Err(Error::UnsupportedDimension { op: "volume_k", k }),
    }
}

/// Arc length between two parameters of a curve; on a closed curve the shorter
/// way around.
pub fn geodesic_distance(manifold: &ParametricManifold, t1: f64, t2: f64) -> Result<f64> {
    let k = manifold.intrinsic_dim();
    if k != 1 {
        return Err(Error::UnsupportedDimension { op: "geodesic_distance", k });
    }
    let axis = manifold.domain()[0];
    if !(axis.contains(t1) && axis.contains(t2)) {
        return Err(Error::InvalidParameter(alloc::format!(
            "parameters ({t1}, {t2}) outside the domain"
        )));
    }
    let speed = |t: f64| manifold.jacobian_at(&[t]).column(0).norm();
    let rule = CompositeRule::default();
    if !axis.periodic {
        let (a, b) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        return Ok(rule.integrate(a, b, speed));
    }
    let (a, b) = (axis.wrap(t1), axis.wrap(t2));
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let inner = rule.integrate(a, b, speed);
    let outer = rule.integrate(b, a + axis.len(), speed);
    Ok(inner.min(outer))
}

/// Cosine of the largest principal angle from `a` to `b`: the smallest
/// singular value of `AᵀB`, clamped to `[0, 1]`.
pub fn principal_angle_cos(a: &Subspace, b: &Subspace) -> Result<f64> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "ambient dimensions {} and {}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    if a.dim() > b.dim() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "first subspace has dimension {} > {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(cross_gram_min_sv(a.basis(), b.basis()).clamp(0.0, 1.0))
}

fn cross_gram_min_sv(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let g = a.transpose() * b;
    if g.nrows() == 1 {
        return g.row(0).norm();
    }
    let sv = linalg::singular_values(&g);
    sv[sv.len() - 1]
}

pub fn summarize(sample: &SampledManifold, manifold: &ParametricManifold) -> Result<MetricSummary> {
    let k = manifold.intrinsic_dim();
    Ok(MetricSummary {
        diameter: diameter(sample),
        volume_k: if k <= 2 { Some(volume_k(manifold)?) } else { None },
        intrinsic_dim: k,
    })
}
