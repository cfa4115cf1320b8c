//! Chart-based manifolds and their sampled form.
//!
//! A [`ParametricManifold`] is a single chart `embed: D ⊂ ℝᵏ → ℝⁿ` over an
//! axis-aligned parameter box whose axes may be periodic. Sampling it yields a
//! [`SampledManifold`]: points, their parameters and an orthonormal tangent
//! basis per point.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use nalgebra::{DMatrix, DVector};

// Float math for no_std; redundant once std is linked in.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::linalg;
use crate::maps::SmoothMap;
use crate::par;
use crate::reach::ReachValue;
use crate::rng;

/// Orthonormality tolerance for every stored basis.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Smallest singular value over `max(1, largest)` below which a Jacobian is degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Relative step of the central finite differences.
pub const FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParamAxis {
    pub lo: f64,
    pub hi: f64,
    pub periodic: bool,
}

impl ParamAxis {
    pub const fn periodic(lo: f64, hi: f64) -> Self {
        Self { lo, hi, periodic: true }
    }

    pub const fn open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, periodic: false }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    /// Maps `t` into `[lo, hi)` for periodic axes; identity otherwise.
    pub fn wrap(&self, t: f64) -> f64 {
        if !self.periodic {
            return t;
        }
        let len = self.len();
        let mut r = (t - self.lo) % len;
        if r < 0.0 {
            r += len;
        }
        self.lo + r
    }

    pub fn contains(&self, t: f64) -> bool {
        self.periodic || (t >= self.lo && t <= self.hi)
    }
}

pub type EmbedFn = Arc<dyn Fn(&[f64]) -> DVector<f64> + Send + Sync>;
pub type JacobianFn = Arc<dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync>;

/// How [`ParametricManifold::sample`] places parameter points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SampleStrategy {
    /// Periodic axes start at `lo`; open axes use cell midpoints. For `k ≥ 2`
    /// every axis gets `max(2, round(N^(1/k)))` points, so the returned count
    /// is that number to the power `k`.
    #[default]
    UniformGrid,
    /// Independent uniform draws per coordinate from the seeded stream.
    SeededRandom,
}

#[derive(Clone)]
pub struct ParametricManifold {
    intrinsic_dim: usize,
    ambient_dim: usize,
    domain: Vec<ParamAxis>,
    embed: EmbedFn,
    jacobian: Option<JacobianFn>,
    label: String,
    known_reach: Option<ReachValue>,
}

impl fmt::Debug for ParametricManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricManifold")
            .field("label", &self.label)
            .field("intrinsic_dim", &self.intrinsic_dim)
            .field("ambient_dim", &self.ambient_dim)
            .field("domain", &self.domain)
            .field("analytic_jacobian", &self.jacobian.is_some())
            .field("known_reach", &self.known_reach)
            .finish()
    }
}

impl ParametricManifold {
    pub fn new<F>(
        label: impl Into<String>,
        domain: Vec<ParamAxis>,
        ambient_dim: usize,
        embed: F,
    ) -> Result<Self>
    where
        F: Fn(&[f64]) -> DVector<f64> + Send + Sync + 'static,
    {
        let k = domain.len();
        if k == 0 || k > ambient_dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "intrinsic dimension {k} must satisfy 1 <= k <= ambient dimension {ambient_dim}"
            )));
        }
        for axis in &domain {
            if !(axis.lo.is_finite() && axis.hi.is_finite() && axis.lo < axis.hi) {
                return Err(Error::InvalidParameter(alloc::format!(
                    "empty or non-finite parameter interval [{}, {}]",
                    axis.lo,
                    axis.hi
                )));
            }
        }
        Ok(Self {
            intrinsic_dim: k,
            ambient_dim,
            domain,
            embed: Arc::new(embed),
            jacobian: None,
            label: label.into(),
            known_reach: None,
        })
    }

    /// Attaches an analytic Jacobian (`n × k`).
    pub fn with_jacobian<F>(mut self, jacobian: F) -> Self
    where
        F: Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'static,
    {
        self.jacobian = Some(Arc::new(jacobian));
        self
    }

    /// Drops the analytic Jacobian so finite differences are used instead.
    pub fn without_jacobian(mut self) -> Self {
        self.jacobian = None;
        self
    }

    pub fn with_known_reach(mut self, reach: ReachValue) -> Self {
        self.known_reach = Some(reach);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn intrinsic_dim(&self) -> usize {
        self.intrinsic_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn domain(&self) -> &[ParamAxis] {
        &self.domain
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Closed-form reach, when the manifold comes with one.
    pub fn known_reach(&self) -> Option<ReachValue> {
        self.known_reach
    }

    pub fn has_analytic_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    fn wrap_param(&self, t: &[f64]) -> Vec<f64> {
        t.iter().zip(&self.domain).map(|(&x, a)| a.wrap(x)).collect()
    }

    pub fn point(&self, t: &[f64]) -> DVector<f64> {
        (self.embed)(&self.wrap_param(t))
    }

    /// Jacobian at `t`: analytic when supplied, finite differences otherwise.
    pub fn jacobian_at(&self, t: &[f64]) -> DMatrix<f64> {
        match &self.jacobian {
            Some(j) => j(&self.wrap_param(t)),
            None => self.fd_jacobian_at(t),
        }
    }

    /// Central differences with step `1e-6 · max(1, |tᵢ|)`. Periodic axes wrap;
    /// open axes switch to second-order one-sided stencils within a step of
    /// the boundary.
    pub fn fd_jacobian_at(&self, t: &[f64]) -> DMatrix<f64> {
        let n = self.ambient_dim;
        let mut jac = DMatrix::<f64>::zeros(n, self.intrinsic_dim);
        let mut probe: Vec<f64> = self.wrap_param(t);
        for (i, axis) in self.domain.iter().enumerate() {
            let ti = probe[i];
            let h = FD_STEP * ti.abs().max(1.0);
            let mut eval = |x: f64| {
                probe[i] = axis.wrap(x);
                let p = (self.embed)(&probe);
                probe[i] = ti;
                p
            };
            let col = if axis.periodic || (ti - h >= axis.lo && ti + h <= axis.hi) {
                (eval(ti + h) - eval(ti - h)) / (2.0 * h)
            } else if ti - h < axis.lo {
                (eval(ti) * -3.0 + eval(ti + h) * 4.0 - eval(ti + 2.0 * h)) / (2.0 * h)
            } else {
                (eval(ti) * 3.0 - eval(ti - h) * 4.0 + eval(ti - 2.0 * h)) / (2.0 * h)
            };
            jac.set_column(i, &col);
        }
        jac
    }

    /// Orthonormalized column span of the Jacobian at `t`.
    pub fn tangent_space(&self, t: &[f64]) -> Result<Subspace> {
        if t.len() != self.intrinsic_dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "parameter has {} coordinates, manifold has {}",
                t.len(),
                self.intrinsic_dim
            )));
        }
        if !t.iter().zip(&self.domain).all(|(&x, a)| a.contains(x)) {
            return Err(Error::InvalidParameter(alloc::format!(
                "parameter {t:?} lies outside the domain"
            )));
        }
        let jac = self.jacobian_at(t);
        if !jac.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("jacobian"));
        }
        let sv = linalg::singular_values(&jac);
        let (largest, smallest) = (sv[0], sv[sv.len() - 1]);
        // Curves have a single singular value, so the ratio is taken against at
        // least unit scale.
        let ratio = smallest / largest.max(1.0);
        if !(ratio >= DEGENERACY_TOL) {
            return Err(Error::DegenerateJacobian { param: t.to_vec(), ratio });
        }
        let basis = linalg::orthonormalize(&jac)
            .ok_or(Error::DegenerateJacobian { param: t.to_vec(), ratio })?;
        Ok(Subspace { basis })
    }

    /// Parameter points of the uniform grid for a requested sample count.
    pub fn grid_params(&self, n_samples: usize) -> Vec<Vec<f64>> {
        let k = self.intrinsic_dim;
        let per_axis = if k == 1 {
            n_samples
        } else {
            ((n_samples as f64).powf(1.0 / k as f64).round() as usize).max(2)
        };
        let axis_values: Vec<Vec<f64>> = self
            .domain
            .iter()
            .map(|a| {
                let step = a.len() / per_axis as f64;
                let offset = if a.periodic { 0.0 } else { 0.5 };
                (0..per_axis).map(|i| a.lo + (i as f64 + offset) * step).collect()
            })
            .collect();
        let total = per_axis.pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let mut p = alloc::vec![0.0; k];
                for axis in (0..k).rev() {
                    p[axis] = axis_values[axis][idx % per_axis];
                    idx /= per_axis;
                }
                p
            })
            .collect()
    }

    /// Samples points, parameters and tangent spaces. Identical arguments give
    /// identical output.
    pub fn sample(
        &self,
        n_samples: usize,
        strategy: SampleStrategy,
        seed: u64,
    ) -> Result<SampledManifold> {
        if n_samples < 2 {
            return Err(Error::TooFewPoints(n_samples));
        }
        let params: Vec<Vec<f64>> = match strategy {
            SampleStrategy::UniformGrid => self.grid_params(n_samples),
            SampleStrategy::SeededRandom => {
                let mut rng = rng::stream(seed, rng::streams::SAMPLING);
                (0..n_samples)
                    .map(|_| {
                        self.domain
                            .iter()
                            .map(|a| a.lo + rng.random::<f64>() * a.len())
                            .collect()
                    })
                    .collect()
            }
        };
        let evaluated: Vec<Result<(DVector<f64>, Subspace)>> =
            par::map_range(params.len(), |i| {
                let p = self.point(&params[i]);
                if !p.iter().all(|x| x.is_finite()) {
                    return Err(Error::NonFinite("embedding"));
                }
                Ok((p, self.tangent_space(&params[i])?))
            });
        let mut points = Vec::with_capacity(params.len());
        let mut tangents = Vec::with_capacity(params.len());
        for r in evaluated {
            let (p, t) = r?;
            points.push(p);
            tangents.push(t);
        }
        Ok(SampledManifold {
            points,
            params: params.into_iter().map(DVector::from_vec).collect(),
            tangents,
            source_label: self.label.clone(),
            seed,
        })
    }

    /// The image under `x ↦ s·x`.
    pub fn scaled(&self, s: f64) -> Self {
        let base = self.clone();
        let jac_base = self.clone();
        let mut out = Self {
            intrinsic_dim: self.intrinsic_dim,
            ambient_dim: self.ambient_dim,
            domain: self.domain.clone(),
            embed: Arc::new(move |t| base.point(t) * s),
            jacobian: Some(Arc::new(move |t| jac_base.jacobian_at(t) * s)),
            label: alloc::format!("{}*{}", s, self.label),
            known_reach: self.known_reach.map(|r| r.scaled(s)),
        };
        if self.jacobian.is_none() {
            // Keep the finite-difference path of the source chart.
            let fd_base = self.clone();
            out.jacobian = Some(Arc::new(move |t| fd_base.fd_jacobian_at(t) * s));
        }
        out
    }

    /// The image chart `Φ ∘ embed` with Jacobian `DΦ · J`. Known reach is not
    /// carried over.
    pub fn mapped(&self, map: Arc<dyn SmoothMap>) -> Result<Self> {
        if map.domain_dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "map domain {} vs ambient dimension {}",
                map.domain_dim(),
                self.ambient_dim
            )));
        }
        let m = map.codomain_dim();
        if m < self.intrinsic_dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "map codomain {m} is smaller than the intrinsic dimension {}",
                self.intrinsic_dim
            )));
        }
        let label = alloc::format!("{}({})", map.label(), self.label);
        let base = self.clone();
        let jac_base = self.clone();
        let jac_map = map.clone();
        Ok(Self {
            intrinsic_dim: self.intrinsic_dim,
            ambient_dim: m,
            domain: self.domain.clone(),
            embed: Arc::new(move |t| map.apply(base.point(t).as_slice())),
            jacobian: Some(Arc::new(move |t| {
                let x = jac_base.point(t);
                jac_map.jacobian(x.as_slice()) * jac_base.jacobian_at(t)
            })),
            label,
            known_reach: None,
        })
    }
}

/// Samples `manifold`; see [`ParametricManifold::sample`].
pub fn sample(
    manifold: &ParametricManifold,
    n_samples: usize,
    strategy: SampleStrategy,
    seed: u64,
) -> Result<SampledManifold> {
    manifold.sample(n_samples, strategy, seed)
}

/// Tangent space at a parameter point; see [`ParametricManifold::tangent_space`].
pub fn tangent_space(manifold: &ParametricManifold, param: &[f64]) -> Result<Subspace> {
    manifold.tangent_space(param)
}

/// Orthogonal complement of a tangent space.
pub fn normal_space(tangent: &Subspace) -> Result<Subspace> {
    tangent.complement()
}

/// A linear subspace given by an orthonormal basis (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: DMatrix<f64>,
}

impl Subspace {
    pub fn from_orthonormal(basis: DMatrix<f64>) -> Result<Self> {
        let (n, d) = basis.shape();
        if d == 0 || d > n {
            return Err(Error::DimensionMismatch(alloc::format!(
                "subspace dimension {d} must satisfy 1 <= d <= {n}"
            )));
        }
        let defect = linalg::orthonormality_defect(&basis);
        if !(defect <= ORTHONORMAL_TOL) {
            return Err(Error::NotOrthonormal(defect));
        }
        Ok(Self { basis })
    }

    /// Orthonormalizes the columns of `m`.
    pub fn from_spanning(m: &DMatrix<f64>) -> Result<Self> {
        let (n, d) = m.shape();
        if d == 0 || d > n {
            return Err(Error::DimensionMismatch(alloc::format!(
                "subspace dimension {d} must satisfy 1 <= d <= {n}"
            )));
        }
        let basis = linalg::orthonormalize(m).ok_or_else(|| {
            Error::InvalidParameter(String::from("spanning vectors are linearly dependent"))
        })?;
        Ok(Self { basis })
    }

    /// Span of the given vectors, all of the same length.
    pub fn span(vectors: &[&[f64]]) -> Result<Self> {
        let n = vectors.first().map_or(0, |v| v.len());
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(String::from("vectors differ in length")));
        }
        let cols: Vec<DVector<f64>> = vectors.iter().map(|v| DVector::from_column_slice(v)).collect();
        Self::from_spanning(&DMatrix::from_columns(&cols))
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Orthonormal basis of the orthogonal complement.
    pub fn complement(&self) -> Result<Subspace> {
        let (n, d) = self.basis.shape();
        if d == n {
            return Err(Error::FullSpace(n));
        }
        Ok(Subspace { basis: linalg::orthogonal_complement(&self.basis) })
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &[f64]) -> DVector<f64> {
        let v = DVector::from_column_slice(v);
        &self.basis * (self.basis.transpose() * v)
    }

    /// `dist(v, span)`, using `scratch` (length `ambient_dim`) as workspace.
    #[inline]
    pub fn residual_norm_with(&self, v: &[f64], scratch: &mut [f64]) -> f64 {
        scratch.copy_from_slice(v);
        for c in 0..self.basis.ncols() {
            let col = self.basis.column(c);
            let col = col.as_slice();
            let coef = linalg::dot(col, v);
            for (s, b) in scratch.iter_mut().zip(col) {
                *s -= coef * b;
            }
        }
        linalg::norm(scratch)
    }

    /// Euclidean distance from `v` to the subspace.
    pub fn residual_norm(&self, v: &[f64]) -> f64 {
        let mut scratch = alloc::vec![0.0; v.len()];
        self.residual_norm_with(v, &mut scratch)
    }

    /// The image subspace `A · span`, or `None` if `A` drops its rank.
    pub fn transformed(&self, a: &DMatrix<f64>) -> Option<Subspace> {
        let image = a * &self.basis;
        linalg::orthonormalize(&image).map(|basis| Subspace { basis })
    }
}

/// A finite sample of a manifold with per-point tangent spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledManifold {
    points: Vec<DVector<f64>>,
    params: Vec<DVector<f64>>,
    tangents: Vec<Subspace>,
    source_label: String,
    seed: u64,
}

impl SampledManifold {
    pub fn new(
        points: Vec<DVector<f64>>,
        params: Vec<DVector<f64>>,
        tangents: Vec<Subspace>,
        source_label: impl Into<String>,
        seed: u64,
    ) -> Result<Self> {
        let n = points.len();
        if n < 2 {
            return Err(Error::TooFewPoints(n));
        }
        if params.len() != n || tangents.len() != n {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} points, {} params, {} tangents",
                n,
                params.len(),
                tangents.len()
            )));
        }
        let dim = points[0].len();
        let k = tangents[0].dim();
        for (p, t) in points.iter().zip(&tangents) {
            if p.len() != dim || t.ambient_dim() != dim || t.dim() != k {
                return Err(Error::DimensionMismatch(String::from(
                    "inconsistent point or tangent dimensions",
                )));
            }
            if !p.iter().all(|x| x.is_finite()) {
                return Err(Error::NonFinite("sample point"));
            }
            let defect = linalg::orthonormality_defect(t.basis());
            if !(defect <= ORTHONORMAL_TOL) {
                return Err(Error::NotOrthonormal(defect));
            }
        }
        Ok(Self { points, params, tangents, source_label: source_label.into(), seed })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn sample_count(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[DVector<f64>] {
        &self.points
    }

    pub fn params(&self) -> &[DVector<f64>] {
        &self.params
    }

    pub fn tangents(&self) -> &[Subspace] {
        &self.tangents
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn intrinsic_dim(&self) -> usize {
        self.tangents[0].dim()
    }

    /// The sub-sample at `indices` (in the given order).
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::InvalidParameter(alloc::format!("index {bad} out of range")));
        }
        Self::new(
            indices.iter().map(|&i| self.points[i].clone()).collect(),
            indices.iter().map(|&i| self.params[i].clone()).collect(),
            indices.iter().map(|&i| self.tangents[i].clone()).collect(),
            self.source_label.clone(),
            self.seed,
        )
    }

    /// Applies an orthogonal (or any full-column-rank) matrix to points and
    /// tangent spaces alike.
    pub fn transformed(&self, a: &DMatrix<f64>) -> Result<Self> {
        if a.ncols() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(String::from("matrix width vs ambient dim")));
        }
        let mut tangents = Vec::with_capacity(self.len());
        for (i, t) in self.tangents.iter().enumerate() {
            tangents.push(t.transformed(a).ok_or(Error::RankCollapse { index: i, sigma: 0.0 })?);
        }
        Self::new(
            self.points.iter().map(|p| a * p).collect(),
            self.params.clone(),
            tangents,
            self.source_label.clone(),
            self.seed,
        )
    }

    /// Uniform scaling of all points; tangent spaces are unchanged.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            points: self.points.iter().map(|p| p * s).collect(),
            ..self.clone()
        }
    }

    pub(crate) fn from_parts_unchecked(
        points: Vec<DVector<f64>>,
        params: Vec<DVector<f64>>,
        tangents: Vec<Subspace>,
        source_label: String,
        seed: u64,
    ) -> Self {
        Self { points, params, tangents, source_label, seed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn circle_quarter_grid() {
        let s = zoo::unit_circle().sample(4, SampleStrategy::UniformGrid, 0).unwrap();
        let expected = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for (p, e) in s.points().iter().zip(expected) {
            assert_close(p.as_slice(), &e, 1e-15);
        }
    }

    #[test]
    fn ellipse_grid_starts_at_major_axis() {
        let s = zoo::ellipse(3.0, 0.5).unwrap().sample(8, SampleStrategy::UniformGrid, 0).unwrap();
        assert_eq!(s.points()[0].as_slice(), &[3.0, 0.0]);
    }

    #[test]
    fn seeded_random_sampling_is_bitwise_deterministic() {
        let m = zoo::trefoil();
        let a = m.sample(257, SampleStrategy::SeededRandom, 99).unwrap();
        let b = m.sample(257, SampleStrategy::SeededRandom, 99).unwrap();
        let bits = |s: &SampledManifold| -> Vec<u64> {
            s.points()
                .iter()
                .chain(s.params())
                .flat_map(|v| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>())
                .chain(s.tangents().iter().flat_map(|t| {
                    t.basis().iter().map(|x| x.to_bits()).collect::<Vec<_>>()
                }))
                .collect()
        };
        assert_eq!(bits(&a), bits(&b));
        assert_eq!(a.seed(), 99);
        let c = m.sample(257, SampleStrategy::SeededRandom, 100).unwrap();
        assert_ne!(bits(&a), bits(&c));
    }

    #[test]
    fn tangent_examples() {
        let t = zoo::unit_circle().tangent_space(&[0.0]).unwrap();
        assert_close(t.basis().as_slice(), &[0.0, 1.0], 1e-15);

        let t = zoo::ellipse(3.0, 0.5).unwrap().tangent_space(&[FRAC_PI_2]).unwrap();
        assert!((t.basis()[(0, 0)].abs() - 1.0).abs() < 1e-12);
        assert!(t.basis()[(1, 0)].abs() < 1e-12);

        // d/dt (cos t, sin t cos θ, sin t sin θ) at 0 = (0, cos θ, sin θ).
        let t = zoo::tilted_circle(FRAC_PI_6).tangent_space(&[0.0]).unwrap();
        let expected = [0.0, 3.0_f64.sqrt() / 2.0, 0.5];
        assert_close(t.basis().as_slice(), &expected, 1e-12);
    }

    #[test]
    fn normal_examples() {
        let t = Subspace::span(&[&[0.0, 1.0]]).unwrap();
        let n = normal_space(&t).unwrap();
        assert!((n.basis()[(0, 0)].abs() - 1.0).abs() < 1e-15);

        let t = Subspace::span(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]).unwrap();
        let n = normal_space(&t).unwrap();
        assert_eq!(n.dim(), 1);
        assert!((n.basis()[(2, 0)].abs() - 1.0).abs() < 1e-15);

        let t = zoo::tilted_circle(FRAC_PI_6).tangent_space(&[0.0]).unwrap();
        let n = normal_space(&t).unwrap();
        assert_eq!(n.dim(), 2);
        assert!(n.residual_norm(&[1.0, 0.0, 0.0]) < 1e-12);
        assert!((t.basis().transpose() * n.basis()).abs().max() < 1e-10);
    }

    #[test]
    fn normal_of_full_space_is_an_error() {
        let t = Subspace::span(&[&[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert_eq!(normal_space(&t), Err(Error::FullSpace(2)));
    }

    #[test]
    fn degenerate_jacobian_is_reported() {
        // Sphere chart at the pole: ∂/∂v vanishes.
        let err = zoo::sphere(1.0).unwrap().tangent_space(&[0.0, 0.3]).unwrap_err();
        assert!(matches!(err, Error::DegenerateJacobian { .. }));

        let m = ParametricManifold::new("stall", alloc::vec![ParamAxis::open(-1.0, 1.0)], 2, |t| {
            DVector::from_vec(alloc::vec![t[0] * t[0] * t[0], 0.0])
        })
        .unwrap();
        assert!(matches!(
            m.sample(3, SampleStrategy::UniformGrid, 0),
            Err(Error::DegenerateJacobian { .. })
        ));
    }

    #[test]
    fn too_few_points() {
        assert_eq!(
            zoo::unit_circle().sample(1, SampleStrategy::UniformGrid, 0),
            Err(Error::TooFewPoints(1))
        );
    }

    #[test]
    fn one_sided_differences_near_open_boundary() {
        let m = ParametricManifold::new("parabola", alloc::vec![ParamAxis::open(0.0, 1.0)], 2, |t| {
            DVector::from_vec(alloc::vec![t[0], t[0] * t[0]])
        })
        .unwrap();
        let j = m.fd_jacobian_at(&[0.0]);
        assert!((j[(0, 0)] - 1.0).abs() < 1e-8 && j[(1, 0)].abs() < 1e-8);
        let j = m.fd_jacobian_at(&[1.0]);
        assert!((j[(1, 0)] - 2.0).abs() < 1e-8);
    }

    #[test]
    fn surface_grid_count() {
        let s = zoo::sphere(1.0).unwrap().sample(100, SampleStrategy::UniformGrid, 0).unwrap();
        assert_eq!(s.len(), 100);
        assert_eq!(s.intrinsic_dim(), 2);
    }
}
