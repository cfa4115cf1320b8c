//! Named manifolds used throughout the tests and the CLI.
//!
//! | name            | chart                                          | ambient | reach          |
//! |-----------------|------------------------------------------------|---------|----------------|
//! | `circle`        | `t ↦ ρ(cos t, sin t)`                           | ℝ²      | ρ              |
//! | `ellipse`       | `t ↦ (a cos t, b sin t)`                        | ℝ²      | min²/max       |
//! | `ellipsoid`     | `(u, v) ↦ (a sin u cos v, b sin u sin v, c cos u)` | ℝ³   | min²/max       |
//! | `sphere`        | ellipsoid with equal radii                      | ℝ³      | ρ              |
//! | `tilted-circle` | `t ↦ (cos t, sin t cos θ, sin t sin θ)`          | ℝ³      | 1              |
//! | `trefoil`       | `t ↦ (sin t + 2 sin 2t, cos t − 2 cos 2t, −sin 3t)` | ℝ³   | unknown        |
//! | `segment`       | `x ↦ (x, 0)`, `x ∈ (−1, 1)`                      | ℝ²      | +∞             |
//! | `padded`        | inner manifold, zero-padded then rotated        | ℝⁿ      | inner's        |

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};

// Float math for no_std; redundant once std is linked in.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::manifold::{ParamAxis, ParametricManifold};
use crate::maps;
use crate::reach::{self, ReachValue};

fn check_radius(r: f64) -> Result<f64> {
    if r > 0.0 && r.is_finite() {
        Ok(r)
    } else {
        Err(Error::NonpositiveRadius(r))
    }
}

pub fn unit_circle() -> ParametricManifold {
    circle(1.0).expect("unit radius is valid")
}

pub fn circle(radius: f64) -> Result<ParametricManifold> {
    let r = check_radius(radius)?;
    Ok(ParametricManifold::new(alloc::format!("circle(r={r})"), vec![ParamAxis::periodic(0.0, TAU)], 2, move |t| {
        DVector::from_vec(vec![r * t[0].cos(), r * t[0].sin()])
    })?
    .with_jacobian(move |t| DMatrix::from_column_slice(2, 1, &[-r * t[0].sin(), r * t[0].cos()]))
    .with_known_reach(ReachValue::Finite(r)))
}

pub fn ellipse(a: f64, b: f64) -> Result<ParametricManifold> {
    let (a, b) = (check_radius(a)?, check_radius(b)?);
    let rch = reach::ellipsoid_reach(&[a, b])?;
    Ok(ParametricManifold::new(alloc::format!("ellipse({a},{b})"), vec![ParamAxis::periodic(0.0, TAU)], 2, move |t| {
        DVector::from_vec(vec![a * t[0].cos(), b * t[0].sin()])
    })?
    .with_jacobian(move |t| DMatrix::from_column_slice(2, 1, &[-a * t[0].sin(), b * t[0].cos()]))
    .with_known_reach(ReachValue::Finite(rch)))
}

/// Axis-aligned ellipse (2 radii) or ellipsoid surface (3 radii).
pub fn ellipsoid(radii: &[f64]) -> Result<ParametricManifold> {
    match *radii {
        [a, b] => ellipse(a, b),
        [a, b, c] => {
            let (a, b, c) = (check_radius(a)?, check_radius(b)?, check_radius(c)?);
            let rch = reach::ellipsoid_reach(&[a, b, c])?;
            let domain = vec![ParamAxis::open(0.0, PI), ParamAxis::periodic(0.0, TAU)];
            Ok(ParametricManifold::new(alloc::format!("ellipsoid({a},{b},{c})"), domain, 3, move |p| {
                let (su, cu, sv, cv) = (p[0].sin(), p[0].cos(), p[1].sin(), p[1].cos());
                DVector::from_vec(vec![a * su * cv, b * su * sv, c * cu])
            })?
            .with_jacobian(move |p| {
                let (su, cu, sv, cv) = (p[0].sin(), p[0].cos(), p[1].sin(), p[1].cos());
                DMatrix::from_column_slice(
                    3,
                    2,
                    &[a * cu * cv, b * cu * sv, -c * su, -a * su * sv, b * su * cv, 0.0],
                )
            })
            .with_known_reach(ReachValue::Finite(rch)))
        }
        _ => Err(Error::DimensionMismatch(alloc::format!(
            "ellipsoid needs 2 or 3 radii, got {}",
            radii.len()
        ))),
    }
}

/// Round 2-sphere in ℝ³.
pub fn sphere(radius: f64) -> Result<ParametricManifold> {
    let r = check_radius(radius)?;
    Ok(ellipsoid(&[r, r, r])?.with_label(alloc::format!("sphere(r={r})")))
}

/// Unit circle through `e₁` whose plane makes angle `θ` with `e₂`.
pub fn tilted_circle(theta: f64) -> ParametricManifold {
    let (ct, st) = (theta.cos(), theta.sin());
    ParametricManifold::new(alloc::format!("tilted-circle(theta={theta})"), vec![ParamAxis::periodic(0.0, TAU)], 3, move |t| {
        let s = t[0].sin();
        DVector::from_vec(vec![t[0].cos(), s * ct, s * st])
    })
    .expect("valid chart")
    .with_jacobian(move |t| {
        let c = t[0].cos();
        DMatrix::from_column_slice(3, 1, &[-t[0].sin(), c * ct, c * st])
    })
    .with_known_reach(ReachValue::Finite(1.0))
}

pub fn trefoil() -> ParametricManifold {
    ParametricManifold::new("trefoil", vec![ParamAxis::periodic(0.0, TAU)], 3, |t| {
        let t = t[0];
        DVector::from_vec(vec![
            t.sin() + 2.0 * (2.0 * t).sin(),
            t.cos() - 2.0 * (2.0 * t).cos(),
            -(3.0 * t).sin(),
        ])
    })
    .expect("valid chart")
    .with_jacobian(|t| {
        let t = t[0];
        DMatrix::from_column_slice(
            3,
            1,
            &[
                t.cos() + 4.0 * (2.0 * t).cos(),
                -t.sin() + 4.0 * (2.0 * t).sin(),
                -3.0 * (3.0 * t).cos(),
            ],
        )
    })
}

/// The open segment `{(x, 0) : |x| < 1}` in ℝ².
pub fn segment() -> ParametricManifold {
    ParametricManifold::new("segment", vec![ParamAxis::open(-1.0, 1.0)], 2, |x| {
        DVector::from_vec(vec![x[0], 0.0])
    })
    .expect("valid chart")
    .with_jacobian(|_| DMatrix::from_column_slice(2, 1, &[1.0, 0.0]))
    .with_known_reach(ReachValue::Infinite)
}

/// Appends zero coordinates up to `ambient_dim`, then applies a seeded random
/// rotation so that no coordinate axis is special.
pub fn padded(inner: &ParametricManifold, ambient_dim: usize, rotation_seed: u64) -> Result<ParametricManifold> {
    let n0 = inner.ambient_dim();
    if ambient_dim < n0 {
        return Err(Error::DimensionMismatch(alloc::format!(
            "cannot pad a manifold in R^{n0} into R^{ambient_dim}"
        )));
    }
    let q = maps::make_orthogonal_map(ambient_dim, rotation_seed).matrix().clone();
    let lift = q.columns(0, n0).into_owned();
    let (embed_src, jac_src, embed_lift, jac_lift) = (inner.clone(), inner.clone(), lift.clone(), lift);
    let mut out = ParametricManifold::new(
        alloc::format!("padded(n={ambient_dim},seed={rotation_seed},{})", inner.label()),
        inner.domain().to_vec(),
        ambient_dim,
        move |t| &embed_lift * embed_src.point(t),
    )?
    .with_jacobian(move |t| &jac_lift * jac_src.jacobian_at(t));
    if let Some(r) = inner.known_reach() {
        out = out.with_known_reach(r);
    }
    Ok(out)
}

/// Serializable description of a zoo manifold.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "name", rename_all = "kebab-case"))]
pub enum ZooSpec {
    Circle {
        #[cfg_attr(feature = "serde", serde(default = "one"))]
        radius: f64,
    },
    Ellipse { radii: Vec<f64> },
    Ellipsoid { radii: Vec<f64> },
    Sphere {
        #[cfg_attr(feature = "serde", serde(default = "one"))]
        radius: f64,
    },
    TiltedCircle { theta: f64 },
    Trefoil,
    Segment,
    Padded { ambient_dim: usize, rotation_seed: u64, inner: Box<ZooSpec> },
}

#[cfg(feature = "serde")]
fn one() -> f64 {
    1.0
}

impl ZooSpec {
    pub fn build(&self) -> Result<ParametricManifold> {
        match self {
            ZooSpec::Circle { radius } => circle(*radius),
            ZooSpec::Ellipse { radii } => {
                if radii.len() != 2 {
                    return Err(Error::DimensionMismatch(alloc::format!(
                        "ellipse needs 2 radii, got {}",
                        radii.len()
                    )));
                }
                ellipse(radii[0], radii[1])
            }
            ZooSpec::Ellipsoid { radii } => ellipsoid(radii),
            ZooSpec::Sphere { radius } => sphere(*radius),
            ZooSpec::TiltedCircle { theta } => {
                if !theta.is_finite() {
                    return Err(Error::InvalidParameter(String::from("theta must be finite")));
                }
                Ok(tilted_circle(*theta))
            }
            ZooSpec::Trefoil => Ok(trefoil()),
            ZooSpec::Segment => Ok(segment()),
            ZooSpec::Padded { ambient_dim, rotation_seed, inner } => {
                padded(&inner.build()?, *ambient_dim, *rotation_seed)
            }
        }
    }

    /// All non-padded entries with their default parameters.
    pub fn catalog() -> Vec<ZooSpec> {
        vec![
            ZooSpec::Circle { radius: 1.0 },
            ZooSpec::Ellipse { radii: vec![3.0, 0.5] },
            ZooSpec::Ellipsoid { radii: vec![2.0, 1.0, 0.5] },
            ZooSpec::Sphere { radius: 1.0 },
            ZooSpec::TiltedCircle { theta: core::f64::consts::FRAC_PI_6 },
            ZooSpec::Trefoil,
            ZooSpec::Segment,
        ]
    }
}
