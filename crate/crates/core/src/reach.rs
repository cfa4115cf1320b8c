//! Reach: closed form for ellipsoids, a pairwise estimator on samples, a
//! randomized normal-bundle collision test and curvature checks for curves.
//!
//! The estimator uses the pointwise characterization
//!
//! ```text
//! rch(M) = inf_{x ≠ y ∈ M} ‖y − x‖² / (2 · dist(y − x, TₓM))
//! ```
//!
//! so on a finite sample it returns a minimum over ordered pairs. That minimum
//! can only shrink as points are added and never undershoots the true reach
//! (up to rounding in the tangent bases).

use alloc::vec::Vec;
use core::cmp::Ordering;

// Float math for no_std; redundant once std is linked in.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg;
use crate::manifold::{ParametricManifold, SampledManifold, Subspace};
use crate::par;
use crate::rng;

/// Chords closer than this (relative) to the tangent space count as +∞.
pub const TANGENTIAL_TOL: f64 = 1e-12;

/// A reach value; `Infinite` is the identity of [`ReachValue::min`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReachValue {
    Finite(f64),
    Infinite,
}

impl ReachValue {
    pub fn from_f64(x: f64) -> Self {
        if x.is_finite() {
            ReachValue::Finite(x)
        } else {
            ReachValue::Infinite
        }
    }

    /// `f64::INFINITY` for the sentinel.
    pub fn value(self) -> f64 {
        match self {
            ReachValue::Finite(x) => x,
            ReachValue::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ReachValue::Infinite)
    }

    pub fn min(self, other: Self) -> Self {
        if other.value() < self.value() {
            other
        } else {
            self
        }
    }

    pub fn scaled(self, s: f64) -> Self {
        match self {
            ReachValue::Finite(x) => ReachValue::Finite(x * s),
            ReachValue::Infinite => ReachValue::Infinite,
        }
    }
}

impl PartialOrd for ReachValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value().partial_cmp(&other.value())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for ReachValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        match self {
            ReachValue::Finite(x) => s.serialize_f64(*x),
            ReachValue::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ReachMethod {
    ClosedFormEllipsoid,
    SampledPointwise,
    NormalBundleTest,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ReachEstimate {
    pub value: ReachValue,
    pub method: ReachMethod,
    #[cfg_attr(feature = "serde", serde(rename = "N"))]
    pub sample_count: usize,
    /// Indices `(x, y)` of the minimizing pair, if any pair was finite.
    pub attaining_pair: Option<(usize, usize)>,
}

fn sorted_radii(radii: &[f64]) -> Result<(f64, f64)> {
    if radii.is_empty() {
        return Err(Error::DimensionMismatch(alloc::string::String::from("no radii given")));
    }
    let mut largest = f64::NEG_INFINITY;
    let mut smallest = f64::INFINITY;
    for &r in radii {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::NonpositiveRadius(r));
        }
        largest = largest.max(r);
        smallest = smallest.min(r);
    }
    Ok((largest, smallest))
}

/// Reach of an axis-aligned ellipsoid: `r_min² / r_max`.
pub fn ellipsoid_reach(radii: &[f64]) -> Result<f64> {
    let (r1, rn) = sorted_radii(radii)?;
    Ok(rn * rn / r1)
}

/// Largest principal curvature of an ellipsoid: `r_max / r_min²`, attained at
/// the ends of the major axis.
pub fn ellipsoid_max_curvature(radii: &[f64]) -> Result<f64> {
    let (r1, rn) = sorted_radii(radii)?;
    Ok(r1 / (rn * rn))
}

pub fn ellipsoid_reach_estimate(radii: &[f64]) -> Result<ReachEstimate> {
    Ok(ReachEstimate {
        value: ReachValue::Finite(ellipsoid_reach(radii)?),
        method: ReachMethod::ClosedFormEllipsoid,
        sample_count: 0,
        attaining_pair: None,
    })
}

/// Pairwise reach quotient for base point `x` with tangent `t` and chord `v`.
#[inline]
fn quotient(t: &Subspace, v: &[f64], scratch: &mut [f64]) -> f64 {
    let len2 = linalg::dot(v, v);
    if len2 == 0.0 {
        return f64::INFINITY;
    }
    let d = t.residual_norm_with(v, scratch);
    if d <= TANGENTIAL_TOL * len2.sqrt() {
        return f64::INFINITY;
    }
    len2 / (2.0 * d)
}

fn row_minimum(m: &SampledManifold, i: usize) -> (f64, usize) {
    let n = m.ambient_dim();
    let mut chord = alloc::vec![0.0; n];
    let mut scratch = alloc::vec![0.0; n];
    let x = m.points()[i].as_slice();
    let t = &m.tangents()[i];
    let mut best = (f64::INFINITY, usize::MAX);
    for (j, y) in m.points().iter().enumerate() {
        if j == i {
            continue;
        }
        for ((c, a), b) in chord.iter_mut().zip(y.as_slice()).zip(x) {
            *c = a - b;
        }
        let q = quotient(t, &chord, &mut scratch);
        if q < best.0 {
            best = (q, j);
        }
    }
    best
}

/// Minimum over ordered pairs of `‖y − x‖² / (2 · dist(y − x, TₓM))`.
pub fn estimate_reach(m: &SampledManifold) -> Result<ReachEstimate> {
    let n = m.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let rows = par::map_range(n, |i| row_minimum(m, i));
    let mut best = (f64::INFINITY, None);
    for (i, (q, j)) in rows.into_iter().enumerate() {
        if q < best.0 {
            best = (q, Some((i, j)));
        }
    }
    Ok(ReachEstimate {
        value: ReachValue::from_f64(best.0),
        method: ReachMethod::SampledPointwise,
        sample_count: n,
        attaining_pair: best.1,
    })
}

/// Randomized search for a collision in the open normal bundle of radius `r`.
///
/// From every sample point `x` we step along `probes_per_point` random normal
/// vectors `v` with `‖v‖ < r`. If another sample `y` (with
/// `‖x − y‖ > 2r·10⁻³`) is strictly closer to `x + v` than `x` is, the nearest
/// point of the manifold to `x + v` is not `x`, so `x + v` is also reached from
/// a second fiber and the bundle is not embedded.
///
/// Returns `false` on the first collision. `true` is evidence only.
pub fn normal_bundle_embedding_test(
    m: &SampledManifold,
    r: f64,
    probes_per_point: usize,
    seed: u64,
) -> bool {
    if !(r > 0.0) || m.intrinsic_dim() == m.ambient_dim() {
        return true;
    }
    let normals: Vec<Subspace> = m
        .tangents()
        .iter()
        .map(|t| t.complement().expect("codimension is positive"))
        .collect();
    let separation = 2.0 * r * 1e-3;
    let tol = 1e-6 * r;
    let collided = par::map_range(m.len(), |i| {
        let mut rng = rng::stream(rng::derive_seed(seed, i as u64), rng::streams::PROBES);
        let x = &m.points()[i];
        let normal = &normals[i];
        let codim = normal.dim();
        for _ in 0..probes_per_point {
            let coef: Vec<f64> = (0..codim).map(|_| StandardNormal.sample(&mut rng)).collect();
            let len = linalg::norm(&coef);
            if len == 0.0 {
                continue;
            }
            let radius = r * rng.random::<f64>().powf(1.0 / codim as f64);
            if radius <= tol {
                continue;
            }
            let v = normal.basis() * nalgebra::DVector::from_vec(coef) * (radius / len);
            let z = x + v;
            for (j, y) in m.points().iter().enumerate() {
                if j == i || linalg::dist(x.as_slice(), y.as_slice()) <= separation {
                    continue;
                }
                if linalg::dist(z.as_slice(), y.as_slice()) < radius - tol {
                    return true;
                }
            }
        }
        false
    });
    !collided.into_iter().any(|c| c)
}

/// Upper estimate of the reach by bisection on [`normal_bundle_embedding_test`]
/// over `(0, r_max]`. Returns `Infinite` if no collision is found at `r_max`.
pub fn bundle_reach_estimate(
    m: &SampledManifold,
    r_max: f64,
    probes_per_point: usize,
    seed: u64,
    iterations: usize,
) -> ReachEstimate {
    let mut estimate = ReachEstimate {
        value: ReachValue::Infinite,
        method: ReachMethod::NormalBundleTest,
        sample_count: m.len(),
        attaining_pair: None,
    };
    if normal_bundle_embedding_test(m, r_max, probes_per_point, seed) {
        return estimate;
    }
    let (mut lo, mut hi) = (0.0, r_max);
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if normal_bundle_embedding_test(m, mid, probes_per_point, seed) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    estimate.value = ReachValue::Finite(hi);
    estimate
}

/// Curvature of a curve at parameter `t`: `‖dT/dt‖ / ‖γ'(t)‖` where
/// `T = γ' / ‖γ'‖`, with `dT/dt` by central differences of step `1e-5`.
pub fn curve_curvature(manifold: &ParametricManifold, t: f64) -> Result<f64> {
    if manifold.intrinsic_dim() != 1 {
        return Err(Error::UnsupportedDimension { op: "curve_curvature", k: manifold.intrinsic_dim() });
    }
    const STEP: f64 = 1e-5;
    let axis = manifold.domain()[0];
    let unit_tangent = |s: f64| {
        let d = manifold.jacobian_at(&[s]).column(0).into_owned();
        let len = d.norm();
        (d / len, len)
    };
    let (_, speed) = unit_tangent(t);
    let dt = if axis.periodic || (t - STEP >= axis.lo && t + STEP <= axis.hi) {
        (unit_tangent(t + STEP).0 - unit_tangent(t - STEP).0) / (2.0 * STEP)
    } else if t - STEP < axis.lo {
        (unit_tangent(t).0 * -3.0 + unit_tangent(t + STEP).0 * 4.0 - unit_tangent(t + 2.0 * STEP).0)
            / (2.0 * STEP)
    } else {
        (unit_tangent(t).0 * 3.0 - unit_tangent(t - STEP).0 * 4.0 + unit_tangent(t - 2.0 * STEP).0)
            / (2.0 * STEP)
    };
    let kappa = dt.norm() / speed;
    if kappa.is_finite() {
        Ok(kappa)
    } else {
        Err(Error::NonFinite("curvature"))
    }
}

/// Largest curvature over `n_probes` grid parameters, with the maximizer.
pub fn max_curve_curvature(manifold: &ParametricManifold, n_probes: usize) -> Result<(f64, f64)> {
    if manifold.intrinsic_dim() != 1 {
        return Err(Error::UnsupportedDimension { op: "max_curve_curvature", k: manifold.intrinsic_dim() });
    }
    let params = manifold.grid_params(n_probes.max(1));
    let mut best = (f64::NEG_INFINITY, f64::NAN);
    for p in params {
        let k = curve_curvature(manifold, p[0])?;
        if k > best.0 {
            best = (k, p[0]);
        }
    }
    Ok(best)
}

/// `true` iff the curvature at every probe is at most `(1 + 10⁻³) / reach`.
pub fn curvature_bound_check(manifold: &ParametricManifold, reach_value: f64, n_probes: usize) -> Result<bool> {
    if manifold.intrinsic_dim() != 1 {
        return Err(Error::UnsupportedDimension { op: "curvature_bound_check", k: manifold.intrinsic_dim() });
    }
    if !(reach_value > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("reach must be positive, got {reach_value}")));
    }
    let (kappa, _) = max_curve_curvature(manifold, n_probes)?;
    Ok(kappa <= (1.0 / reach_value) * (1.0 + 1e-3))
}
