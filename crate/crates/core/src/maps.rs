//! Maps between Euclidean spaces: linear maps with spectral data, random
//! generators, general smooth maps and the smoothed triangle-wave
//! counterexample. Also measures bi-Lipschitz constants on samples and pushes
//! sampled manifolds forward.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use nalgebra::{DMatrix, DVector};

// Float math for no_std; redundant once std is linked in.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg;
use crate::manifold::{SampledManifold, Subspace};
use crate::par;
use crate::quadrature;
use crate::rng;

/// A smooth map `ℝⁿ → ℝᵐ` with a Jacobian.
pub trait SmoothMap: Send + Sync {
    fn domain_dim(&self) -> usize;
    fn codomain_dim(&self) -> usize;
    fn apply(&self, x: &[f64]) -> DVector<f64>;
    /// `m × n` derivative at `x`.
    fn jacobian(&self, x: &[f64]) -> DMatrix<f64>;
    fn label(&self) -> String;

    fn as_linear(&self) -> Option<&LinearMapSpec> {
        None
    }
}

/// An `m × n` matrix with its singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMapSpec {
    matrix: DMatrix<f64>,
    singular_values: Vec<f64>,
    sigma_min: f64,
    sigma_max: f64,
    rank: usize,
    label: String,
}

impl LinearMapSpec {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() == 0 || matrix.ncols() == 0 {
            return Err(Error::DimensionMismatch(String::from("empty matrix")));
        }
        if !matrix.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        let sv: Vec<f64> = linalg::singular_values(&matrix).iter().copied().collect();
        let sigma_max = sv[0];
        let cutoff = sigma_max * matrix.nrows().max(matrix.ncols()) as f64 * f64::EPSILON;
        let rank = sv.iter().filter(|&&s| s > cutoff).count();
        let sigma_min = if rank == 0 { 0.0 } else { sv[rank - 1] };
        let label = alloc::format!("matrix({}x{})", matrix.nrows(), matrix.ncols());
        Ok(Self { matrix, singular_values: sv, sigma_min, sigma_max, rank, label })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(String::from("ragged matrix rows")));
        }
        Self::new(DMatrix::from_fn(m, n, |i, j| rows[i][j]))
    }

    pub fn diag(entries: &[f64]) -> Result<Self> {
        Ok(Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(entries)))?
            .with_label(alloc::format!("diag{entries:?}")))
    }

    pub fn identity(n: usize) -> Self {
        Self::new(DMatrix::identity(n, n))
            .expect("identity is valid")
            .with_label(alloc::format!("identity(n={n})"))
    }

    /// `[I_m 0]`, keeping the leading `m` of `n` coordinates.
    pub fn projection(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::InvalidParameter(alloc::format!(
                "projection needs 1 <= m <= n, got m={m}, n={n}"
            )));
        }
        Ok(Self::new(DMatrix::identity(m, n))?.with_label(alloc::format!("projection(m={m},n={n})")))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `α · Φ`.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        Ok(Self::new(&self.matrix * alpha)?.with_label(alloc::format!("{alpha}*{}", self.label)))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Descending, `min(m, n)` entries.
    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    /// Smallest nonzero singular value.
    pub fn sigma_min(&self) -> f64 {
        self.sigma_min
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    pub fn spectral_norm(&self) -> f64 {
        self.sigma_max
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.nrows() == self.ncols()
            && self.rank == self.nrows()
            && (self.sigma_max - 1.0).abs() <= tol
            && (self.sigma_min - 1.0).abs() <= tol
    }
}

impl SmoothMap for LinearMapSpec {
    fn domain_dim(&self) -> usize {
        self.matrix.ncols()
    }

    fn codomain_dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn apply(&self, x: &[f64]) -> DVector<f64> {
        &self.matrix * DVector::from_column_slice(x)
    }

    fn jacobian(&self, _x: &[f64]) -> DMatrix<f64> {
        self.matrix.clone()
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn as_linear(&self) -> Option<&LinearMapSpec> {
        Some(self)
    }
}

/// Entries i.i.d. `N(0, 1/m)`.
pub fn make_gaussian_map(m: usize, n: usize, seed: u64) -> LinearMapSpec {
    assert!(m >= 1 && n >= 1, "gaussian map needs m, n >= 1");
    let mut rng = rng::stream(seed, rng::streams::GAUSSIAN_MAP);
    let scale = 1.0 / (m as f64).sqrt();
    let mut entries = Vec::with_capacity(m * n);
    for _ in 0..m * n {
        let z: f64 = StandardNormal.sample(&mut rng);
        entries.push(z * scale);
    }
    LinearMapSpec::new(DMatrix::from_row_slice(m, n, &entries))
        .expect("gaussian entries are finite")
        .with_label(alloc::format!("gaussian(m={m},n={n},seed={seed})"))
}

/// Haar-distributed orthogonal matrix from the seeded stream; seed 0 is the
/// identity.
pub fn make_orthogonal_map(n: usize, seed: u64) -> LinearMapSpec {
    assert!(n >= 1, "orthogonal map needs n >= 1");
    if seed == 0 {
        return LinearMapSpec::identity(n).with_label(alloc::format!("orthogonal(n={n},seed=0)"));
    }
    let mut rng = rng::stream(seed, rng::streams::ORTHOGONAL_MAP);
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    LinearMapSpec::new(q)
        .expect("orthogonal factor is finite")
        .with_label(alloc::format!("orthogonal(n={n},seed={seed})"))
}

pub type EvalFn = Arc<dyn Fn(&[f64]) -> DVector<f64> + Send + Sync>;
pub type DerivFn = Arc<dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync>;

/// A general smooth map given by closures. Without an analytic derivative the
/// Jacobian falls back to central differences.
#[derive(Clone)]
pub struct NonlinearMap {
    domain_dim: usize,
    codomain_dim: usize,
    eval: EvalFn,
    dphi: Option<DerivFn>,
    label: String,
}

impl fmt::Debug for NonlinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NonlinearMap")
            .field("label", &self.label)
            .field("domain_dim", &self.domain_dim)
            .field("codomain_dim", &self.codomain_dim)
            .field("analytic_jacobian", &self.dphi.is_some())
            .finish()
    }
}

impl NonlinearMap {
    pub fn new<F>(label: impl Into<String>, domain_dim: usize, codomain_dim: usize, eval: F) -> Self
    where
        F: Fn(&[f64]) -> DVector<f64> + Send + Sync + 'static,
    {
        Self { domain_dim, codomain_dim, eval: Arc::new(eval), dphi: None, label: label.into() }
    }

    pub fn with_jacobian<F>(mut self, dphi: F) -> Self
    where
        F: Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'static,
    {
        self.dphi = Some(Arc::new(dphi));
        self
    }

    fn fd_jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let mut jac = DMatrix::zeros(self.codomain_dim, self.domain_dim);
        let mut probe = x.to_vec();
        for i in 0..self.domain_dim {
            let h = crate::manifold::FD_STEP * x[i].abs().max(1.0);
            probe[i] = x[i] + h;
            let fp = (self.eval)(&probe);
            probe[i] = x[i] - h;
            let fm = (self.eval)(&probe);
            probe[i] = x[i];
            jac.set_column(i, &((fp - fm) / (2.0 * h)));
        }
        jac
    }
}

impl SmoothMap for NonlinearMap {
    fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    fn apply(&self, x: &[f64]) -> DVector<f64> {
        (self.eval)(x)
    }

    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        match &self.dphi {
            Some(d) => d(x),
            None => self.fd_jacobian(x),
        }
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Bi-Lipschitz constants measured on a sample.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IsometryReport {
    pub l: f64,
    pub u: f64,
    /// `max(1 − l², u² − 1)`
    pub delta: f64,
    pub min_pair: (usize, usize),
    pub max_pair: (usize, usize),
    pub sample_pair_count: usize,
    /// Set when only a random subset of pairs was scanned.
    pub pair_budget: Option<usize>,
}

/// `Δ = max(1 − l², u² − 1)`.
pub fn isometry_delta(l: f64, u: f64) -> f64 {
    (1.0 - l * l).max(u * u - 1.0)
}

/// Distance ratios at or below this count as a collapse of the pair.
pub const COLLAPSE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
struct RatioScan {
    min: (f64, usize, usize),
    max: (f64, usize, usize),
    pairs: usize,
    collapse: Option<(usize, usize)>,
}

impl RatioScan {
    fn empty() -> Self {
        Self {
            min: (f64::INFINITY, 0, 0),
            max: (f64::NEG_INFINITY, 0, 0),
            pairs: 0,
            collapse: None,
        }
    }

    #[inline]
    fn visit(&mut self, i: usize, j: usize, x: &[f64], y: &[f64], fx: &[f64], fy: &[f64]) {
        let dx = linalg::dist(x, y);
        if dx <= 1e-12 {
            return;
        }
        let dy = linalg::dist(fx, fy);
        if dy <= COLLAPSE_TOL * dx {
            self.collapse.get_or_insert((i, j));
            return;
        }
        let ratio = dy / dx;
        self.pairs += 1;
        if ratio < self.min.0 {
            self.min = (ratio, i, j);
        }
        if ratio > self.max.0 {
            self.max = (ratio, i, j);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        if other.min.0 < self.min.0 {
            self.min = other.min;
        }
        if other.max.0 > self.max.0 {
            self.max = other.max;
        }
        self.pairs += other.pairs;
        if self.collapse.is_none() {
            self.collapse = other.collapse;
        }
        self
    }

    fn finish(self, budget: Option<usize>) -> Result<IsometryReport> {
        if let Some((i, j)) = self.collapse {
            return Err(Error::Collapse { i, j });
        }
        if self.pairs == 0 {
            return Err(Error::TooFewPoints(0));
        }
        let (l, u) = (self.min.0, self.max.0);
        Ok(IsometryReport {
            l,
            u,
            delta: isometry_delta(l, u),
            min_pair: (self.min.1, self.min.2),
            max_pair: (self.max.1, self.max.2),
            sample_pair_count: self.pairs,
            pair_budget: budget,
        })
    }
}

fn images(map: &dyn SmoothMap, m: &SampledManifold) -> Result<Vec<DVector<f64>>> {
    if map.domain_dim() != m.ambient_dim() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "map domain {} vs ambient dimension {}",
            map.domain_dim(),
            m.ambient_dim()
        )));
    }
    let out = par::map_range(m.len(), |i| map.apply(m.points()[i].as_slice()));
    if out.iter().any(|p| !p.iter().all(|x| x.is_finite())) {
        return Err(Error::NonFinite("map evaluation"));
    }
    Ok(out)
}

/// `l = min`, `u = max` of `‖Φ(x) − Φ(y)‖ / ‖x − y‖` over all sample pairs.
pub fn isometry_constants(map: &dyn SmoothMap, m: &SampledManifold) -> Result<IsometryReport> {
    if m.len() < 2 {
        return Err(Error::TooFewPoints(m.len()));
    }
    let img = images(map, m)?;
    let pts = m.points();
    let rows = par::map_range(pts.len(), |i| {
        let mut scan = RatioScan::empty();
        for j in i + 1..pts.len() {
            scan.visit(i, j, pts[i].as_slice(), pts[j].as_slice(), img[i].as_slice(), img[j].as_slice());
        }
        scan
    });
    rows.into_iter().fold(RatioScan::empty(), RatioScan::merge).finish(None)
}

/// Like [`isometry_constants`], but scans at most `budget` random pairs when the
/// sample has more pairs than that.
pub fn isometry_constants_budgeted(
    map: &dyn SmoothMap,
    m: &SampledManifold,
    budget: usize,
    seed: u64,
) -> Result<IsometryReport> {
    let n = m.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    if budget >= n * (n - 1) / 2 {
        return isometry_constants(map, m);
    }
    let img = images(map, m)?;
    let pts = m.points();
    let mut rng = rng::stream(seed, rng::streams::PAIRS);
    let mut scan = RatioScan::empty();
    for _ in 0..budget {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        scan.visit(i, j, pts[i].as_slice(), pts[j].as_slice(), img[i].as_slice(), img[j].as_slice());
    }
    scan.finish(Some(budget))
}

/// Absolute floor on the smallest singular value of a transported tangent basis.
pub const RANK_COLLAPSE_TOL: f64 = 1e-10;

/// Maps points by `Φ` and tangent bases by `DΦ(x)`, re-orthonormalizing.
pub fn pushforward(map: &dyn SmoothMap, m: &SampledManifold) -> Result<SampledManifold> {
    let img = images(map, m)?;
    let k = m.intrinsic_dim();
    if map.codomain_dim() < k {
        return Err(Error::DimensionMismatch(alloc::format!(
            "codomain {} is smaller than the intrinsic dimension {k}",
            map.codomain_dim()
        )));
    }
    let transported = par::map_range(m.len(), |i| -> Result<Subspace> {
        let jac = map.jacobian(m.points()[i].as_slice());
        let t = jac * m.tangents()[i].basis();
        let sigma = *linalg::singular_values(&t).as_slice().last().unwrap_or(&0.0);
        if !(sigma > RANK_COLLAPSE_TOL) {
            return Err(Error::RankCollapse { index: i, sigma });
        }
        // Already orthonormal (identity, orthogonal maps): keep the exact basis.
        if linalg::orthonormality_defect(&t) <= 1e-14 {
            return Subspace::from_orthonormal(t);
        }
        linalg::orthonormalize(&t)
            .map(|b| Subspace::from_orthonormal(b))
            .unwrap_or(Err(Error::RankCollapse { index: i, sigma }))
    });
    let tangents = transported.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SampledManifold::from_parts_unchecked(
        img,
        m.params().to_vec(),
        tangents,
        alloc::format!("{}({})", map.label(), m.source_label()),
        m.seed(),
    ))
}

/// The odd, compactly supported profile `f` whose integral smooths the
/// triangle wave: `−1` on `[ρ, δ−ρ]`, exponential bump ramps of width `ρ` at
/// both ends, zero from `δ` on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpProfile {
    delta: f64,
    rho: f64,
}

impl BumpProfile {
    pub fn new(delta: f64, rho: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!("delta must be positive, got {delta}")));
        }
        if !(rho > 0.0 && rho < 0.5 * delta) {
            return Err(Error::InvalidParameter(alloc::format!(
                "rho must satisfy 0 < rho < delta/2, got rho={rho}, delta={delta}"
            )));
        }
        Ok(Self { delta, rho })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    fn ramp(s: f64) -> f64 {
        let q = 1.0 - s * s;
        if q <= 0.0 {
            return 0.0;
        }
        (1.0 - 1.0 / q).exp()
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        if x < 0.0 {
            return -self.eval(-x);
        }
        let (d, r) = (self.delta, self.rho);
        if x <= r {
            -Self::ramp((x - r) / r)
        } else if x <= d - r {
            -1.0
        } else if x < d {
            -Self::ramp((x - (d - r)) / r)
        } else {
            0.0
        }
    }

    /// Points where the piecewise definition switches, ascending.
    pub fn breakpoints(&self) -> [f64; 7] {
        let (d, r) = (self.delta, self.rho);
        [-d, -(d - r), -r, 0.0, r, d - r, d]
    }
}

/// `f(x)` for the bump profile with parameters `δ`, `ρ`.
pub fn bump_f(x: f64, delta: f64, rho: f64) -> Result<f64> {
    Ok(BumpProfile::new(delta, rho)?.eval(x))
}

/// Absolute tolerance of the adaptive Simpson integration of the profile.
pub const HEIGHT_TOL: f64 = 1e-10;

/// `(x, y) ↦ (x, y + h(x))` with `h(x) = (c/δ) ∫_{−δ}^{x} f(z) dz`, which bends
/// the flat segment into a smooth tent under the triangle wave
/// `c · max(0, 1 − |x|/δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterexampleMap {
    c: f64,
    profile: BumpProfile,
}

impl CounterexampleMap {
    pub fn new(delta: f64, c: f64, rho: f64) -> Result<Self> {
        if !(0.0 < c && c < delta && delta < 1.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "need 0 < c < delta < 1, got c={c}, delta={delta}"
            )));
        }
        Ok(Self { c, profile: BumpProfile::new(delta, rho)? })
    }

    pub fn delta(&self) -> f64 {
        self.profile.delta
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn rho(&self) -> f64 {
        self.profile.rho
    }

    pub fn profile(&self) -> &BumpProfile {
        &self.profile
    }

    /// Height of the smooth tent at `x`.
    pub fn height(&self, x: f64) -> f64 {
        let d = self.profile.delta;
        if x.abs() >= d {
            return 0.0;
        }
        let f = |z: f64| self.profile.eval(z);
        let cuts = self.profile.breakpoints();
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1].min(x));
            if b <= a {
                break;
            }
            total += quadrature::adaptive_simpson(&f, a, b, HEIGHT_TOL / cuts.len() as f64);
        }
        self.c / d * total
    }

    /// `dh/dx = (c/δ) f(x)`.
    pub fn slope(&self, x: f64) -> f64 {
        self.c / self.profile.delta * self.profile.eval(x)
    }

    /// The non-smooth comparison height `c · max(0, 1 − |x|/δ)`.
    pub fn triangle_height(&self, x: f64) -> f64 {
        let d = self.profile.delta;
        if x.abs() <= d {
            self.c * (1.0 - x.abs() / d)
        } else {
            0.0
        }
    }

    /// The Lipschitz upper constant the construction guarantees: `1 + c/δ`.
    pub fn upper_constant(&self) -> f64 {
        1.0 + self.c / self.profile.delta
    }

    /// Upper bound on the reach of the image: `δ/√2`.
    pub fn reach_upper_bound(&self) -> f64 {
        self.profile.delta / 2.0_f64.sqrt()
    }
}

impl SmoothMap for CounterexampleMap {
    fn domain_dim(&self) -> usize {
        2
    }

    fn codomain_dim(&self) -> usize {
        2
    }

    fn apply(&self, p: &[f64]) -> DVector<f64> {
        DVector::from_vec(alloc::vec![p[0], p[1] + self.height(p[0])])
    }

    fn jacobian(&self, p: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[1.0, 0.0, self.slope(p[0]), 1.0])
    }

    fn label(&self) -> String {
        alloc::format!(
            "counterexample(delta={},c={},rho={})",
            self.profile.delta,
            self.c,
            self.profile.rho
        )
    }
}

impl From<CounterexampleMap> for NonlinearMap {
    fn from(cm: CounterexampleMap) -> Self {
        NonlinearMap::new(cm.label(), 2, 2, move |p| cm.apply(p)).with_jacobian(move |p| cm.jacobian(p))
    }
}

/// Builds the counterexample map; see [`CounterexampleMap`].
pub fn counterexample_map(delta: f64, c: f64, rho: f64) -> Result<CounterexampleMap> {
    CounterexampleMap::new(delta, c, rho)
}

/// Serializable map description.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum MapSpec {
    Gaussian { m: usize, n: usize, seed: u64 },
    Orthogonal { n: usize, seed: u64 },
    Matrix { rows: Vec<Vec<f64>> },
    Counterexample { delta: f64, c: f64, rho: f64 },
    Projection { m: usize, n: usize },
}

/// A map built from a [`MapSpec`].
#[derive(Debug, Clone)]
pub enum BuiltMap {
    Linear(LinearMapSpec),
    Counterexample(CounterexampleMap),
}

impl BuiltMap {
    pub fn as_smooth(&self) -> &dyn SmoothMap {
        match self {
            BuiltMap::Linear(l) => l,
            BuiltMap::Counterexample(c) => c,
        }
    }

    pub fn into_arc(self) -> Arc<dyn SmoothMap> {
        match self {
            BuiltMap::Linear(l) => Arc::new(l),
            BuiltMap::Counterexample(c) => Arc::new(c),
        }
    }

    pub fn linear(&self) -> Option<&LinearMapSpec> {
        match self {
            BuiltMap::Linear(l) => Some(l),
            BuiltMap::Counterexample(_) => None,
        }
    }
}

impl MapSpec {
    pub fn build(&self) -> Result<BuiltMap> {
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(Error::InvalidParameter(alloc::format!("{name} must be at least 1")))
            } else {
                Ok(())
            }
        };
        Ok(match self {
            MapSpec::Gaussian { m, n, seed } => {
                positive("m", *m)?;
                positive("n", *n)?;
                BuiltMap::Linear(make_gaussian_map(*m, *n, *seed))
            }
            MapSpec::Orthogonal { n, seed } => {
                positive("n", *n)?;
                BuiltMap::Linear(make_orthogonal_map(*n, *seed))
            }
            MapSpec::Matrix { rows } => BuiltMap::Linear(LinearMapSpec::from_rows(rows)?),
            MapSpec::Counterexample { delta, c, rho } => {
                BuiltMap::Counterexample(CounterexampleMap::new(*delta, *c, *rho)?)
            }
            MapSpec::Projection { m, n } => BuiltMap::Linear(LinearMapSpec::projection(*m, *n)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::SampleStrategy;
    use crate::zoo;

    #[test]
    fn gaussian_small_and_deterministic() {
        let a = make_gaussian_map(1, 1, 5);
        assert_eq!(a.sigma_min(), a.matrix()[(0, 0)].abs());
        assert_eq!(a.sigma_max(), a.sigma_min());
        assert_eq!(make_gaussian_map(4, 7, 11), make_gaussian_map(4, 7, 11));
        assert_ne!(make_gaussian_map(4, 7, 11), make_gaussian_map(4, 7, 12));
    }

    #[test]
    fn orthogonal_maps() {
        assert_eq!(make_orthogonal_map(3, 0).matrix(), &DMatrix::identity(3, 3));
        for seed in 1..20 {
            let q = make_orthogonal_map(2, seed);
            assert!(q.is_orthogonal(1e-12));
            let q3 = make_orthogonal_map(3, seed);
            assert!((q3.matrix().determinant().abs() - 1.0).abs() < 1e-12);
            assert!(q3.singular_values().iter().all(|s| (s - 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn rank_and_sigma_min_ignore_null_directions() {
        let p = LinearMapSpec::projection(2, 3).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.sigma_min(), 1.0);
        let d = LinearMapSpec::from_rows(&[alloc::vec![1.0, 0.0], alloc::vec![0.0, 0.0]]).unwrap();
        assert_eq!(d.rank(), 1);
        assert_eq!(d.sigma_min(), 1.0);
        assert!(LinearMapSpec::from_rows(&[alloc::vec![1.0], alloc::vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn isometry_examples() {
        let circle = zoo::unit_circle().sample(4096, SampleStrategy::UniformGrid, 0).unwrap();
        let q = make_orthogonal_map(2, 9);
        let r = isometry_constants(&q, &circle).unwrap();
        assert!((r.l - 1.0).abs() < 1e-12 && (r.u - 1.0).abs() < 1e-12);

        let d = LinearMapSpec::diag(&[3.0, 0.5]).unwrap();
        let r = isometry_constants(&d, &circle).unwrap();
        assert!((r.l - 0.5).abs() < 0.005 && (r.u - 3.0).abs() < 0.03, "{r:?}");
        assert_eq!(r.delta, isometry_delta(r.l, r.u));
        assert_eq!(r.sample_pair_count, 4096 * 4095 / 2);
    }

    #[test]
    fn collapse_is_an_error() {
        let s = zoo::unit_circle().sample(16, SampleStrategy::UniformGrid, 0).unwrap();
        let p = LinearMapSpec::from_rows(&[alloc::vec![1.0, 0.0]]).unwrap();
        // (cos t, ±sin t) project to the same point.
        assert!(matches!(isometry_constants(&p, &s), Err(Error::Collapse { .. })));
    }

    #[test]
    fn budgeted_scan_records_budget() {
        let s = zoo::trefoil().sample(300, SampleStrategy::UniformGrid, 0).unwrap();
        let g = make_gaussian_map(3, 3, 1);
        let full = isometry_constants(&g, &s).unwrap();
        let part = isometry_constants_budgeted(&g, &s, 1000, 4).unwrap();
        assert_eq!(part.pair_budget, Some(1000));
        assert!(part.l >= full.l && part.u <= full.u);
    }

    #[test]
    fn pushforward_examples() {
        let s = zoo::unit_circle().sample(512, SampleStrategy::UniformGrid, 0).unwrap();
        let id = LinearMapSpec::identity(2);
        assert_eq!(pushforward(&id, &s).unwrap().points(), s.points());
        assert_eq!(pushforward(&id, &s).unwrap().tangents(), s.tangents());

        let d = LinearMapSpec::diag(&[3.0, 0.5]).unwrap();
        let img = pushforward(&d, &s).unwrap();
        for p in img.points() {
            assert!(((p[0] / 3.0).powi(2) + (2.0 * p[1]).powi(2) - 1.0).abs() < 1e-12);
        }

        let flat = LinearMapSpec::from_rows(&[alloc::vec![1.0, 0.0], alloc::vec![0.0, 0.0]]).unwrap();
        assert!(matches!(pushforward(&flat, &s), Err(Error::RankCollapse { .. })));
    }

    #[test]
    fn bump_profile_values() {
        let (d, r) = (0.1, 0.01);
        assert_eq!(bump_f(r, d, r).unwrap(), -1.0);
        assert_eq!(bump_f(d, d, r).unwrap(), 0.0);
        assert_eq!(bump_f(0.0, d, r).unwrap(), 0.0);
        for x in [0.1, 0.2, 0.5, 0.99] {
            assert_eq!(bump_f(x, d, r).unwrap(), 0.0);
        }
        assert!(bump_f(0.0, 0.1, 0.05).is_err());
    }

    #[test]
    fn counterexample_parameters_are_validated() {
        assert!(counterexample_map(0.1, 0.05, 0.01).is_ok());
        assert!(counterexample_map(0.1, 0.2, 0.01).is_err());
        assert!(counterexample_map(1.5, 0.05, 0.01).is_err());
        assert!(counterexample_map(0.1, 0.05, 0.06).is_err());
    }

    #[test]
    fn counterexample_height_outside_support() {
        let cm = counterexample_map(0.1, 0.05, 0.01).unwrap();
        for x in [-0.99, -0.5, -0.1, 0.1, 0.3, 0.99] {
            assert_eq!(cm.height(x), 0.0);
        }
        // Integral of the odd profile over the full support vanishes.
        let inside = cm.height(0.1 - 1e-12);
        assert!(inside.abs() < 1e-9, "{inside}");
    }
}
