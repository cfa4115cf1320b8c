//! Numerical toolkit for smooth submanifolds of Euclidean space and the maps
//! that embed them elsewhere.
//!
//! The crate covers four layers:
//!
//! - [`manifold`]: chart-based manifolds, deterministic sampling, tangent and
//!   normal spaces, plus a small [`zoo`] of named test manifolds.
//! - [`metrics`]: diameter, k-volume, arc length on curves and the cosine of
//!   the largest principal angle between two subspaces.
//! - [`reach`]: the ellipsoid closed form, a pairwise reach estimator, a
//!   randomized normal-bundle collision test and curvature checks.
//! - [`maps`]: linear maps with spectral data, Gaussian and orthogonal
//!   generators, the smoothed triangle-wave counterexample, isometry constants
//!   and pushforward of sampled manifolds.
//!
//! [`verify`] ties these together into reproducible checks that each produce
//! a [`verify::VerificationReport`].
//!
//! The crate is `no_std` and needs only `alloc`. Enable `parallel` to spread
//! the O(N²) pair scans over rayon; results are identical either way.

#![no_std]

extern crate alloc;

pub mod error;
pub mod linalg;
pub mod manifold;
pub mod maps;
pub mod metrics;
mod par;
pub mod quadrature;
pub mod reach;
pub mod rng;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use manifold::{ParamAxis, ParametricManifold, SampleStrategy, SampledManifold, Subspace};
pub use maps::{IsometryReport, LinearMapSpec, NonlinearMap, SmoothMap};
pub use reach::{ReachEstimate, ReachMethod, ReachValue};
pub use verify::VerificationReport;
