//! Executable checks. Each check samples a manifold, applies a map, measures
//! the quantities involved and compares them against the corresponding bound.
//! The outcome is a [`VerificationReport`] whose `passed` flag is the
//! conjunction of its recorded [`Condition`]s.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

// Float math for no_std; redundant once std is linked in.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::maps::{self, CounterexampleMap, IsometryReport, LinearMapSpec, SmoothMap};
use crate::manifold::{ParametricManifold, SampleStrategy, SampledManifold};
use crate::metrics;
use crate::reach::{self, ReachValue};
use crate::rng;
use crate::zoo;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Relation {
    Le,
    Ge,
    Lt,
    Gt,
}

/// `lhs relation rhs`, allowing an absolute `tolerance` in the lenient direction.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Condition {
    pub name: String,
    #[cfg_attr(feature = "serde", serde(serialize_with = "ser::lenient_f64"))]
    pub lhs: f64,
    pub relation: Relation,
    #[cfg_attr(feature = "serde", serde(serialize_with = "ser::lenient_f64"))]
    pub rhs: f64,
    #[cfg_attr(feature = "serde", serde(serialize_with = "ser::lenient_f64"))]
    pub tolerance: f64,
}

impl Condition {
    pub fn new(name: impl Into<String>, lhs: f64, relation: Relation, rhs: f64, tolerance: f64) -> Self {
        Self { name: name.into(), lhs, relation, rhs, tolerance }
    }

    /// NaN on either side fails.
    pub fn holds(&self) -> bool {
        let (l, r, t) = (self.lhs, self.rhs, self.tolerance);
        // An infinite bound with an infinite value compares exactly.
        let shifted = |sign: f64| if r.is_infinite() { r } else { r + sign * t };
        match self.relation {
            Relation::Le => l <= shifted(1.0),
            Relation::Ge => l >= shifted(-1.0),
            Relation::Lt => l < shifted(1.0),
            Relation::Gt => l > shifted(-1.0),
        }
    }
}

/// Identifies what a check was run on.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ReportInputs {
    pub manifold: String,
    pub map: Option<String>,
    #[cfg_attr(feature = "serde", serde(rename = "N"))]
    pub n_samples: usize,
    pub seed: u64,
    pub pair_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VerificationReport {
    pub check_name: String,
    pub inputs: ReportInputs,
    #[cfg_attr(feature = "serde", serde(serialize_with = "ser::lenient_map"))]
    pub measured: BTreeMap<String, f64>,
    #[cfg_attr(feature = "serde", serde(serialize_with = "ser::lenient_map"))]
    pub bound: BTreeMap<String, f64>,
    pub conditions: Vec<Condition>,
    pub passed: bool,
    pub tolerance_used: f64,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check_name: impl Into<String>, inputs: ReportInputs, tolerance_used: f64) -> Self {
        Self {
            check_name: check_name.into(),
            inputs,
            measured: BTreeMap::new(),
            bound: BTreeMap::new(),
            conditions: Vec::new(),
            passed: true,
            tolerance_used,
            notes: Vec::new(),
        }
    }

    pub fn measure(&mut self, name: &str, value: f64) -> &mut Self {
        self.measured.insert(name.to_string(), value);
        self
    }

    pub fn set_bound(&mut self, name: &str, value: f64) -> &mut Self {
        self.bound.insert(name.to_string(), value);
        self
    }

    pub fn require(&mut self, c: Condition) -> &mut Self {
        self.conditions.push(c);
        self.passed = self.evaluate();
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    /// Recomputes the verdict from the stored conditions.
    pub fn evaluate(&self) -> bool {
        self.conditions.iter().all(Condition::holds)
    }

    pub fn failed_conditions(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.holds())
    }
}

#[cfg(feature = "serde")]
mod ser {
    use alloc::collections::BTreeMap;
    use alloc::string::String;
    use serde::ser::SerializeMap;
    use serde::Serializer;

    fn write<S: Serializer>(x: f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn lenient_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        write(*x, s)
    }

    struct Lenient(f64);

    impl serde::Serialize for Lenient {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            write(self.0, s)
        }
    }

    pub fn lenient_map<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            out.serialize_entry(k, &Lenient(*v))?;
        }
        out.end()
    }
}

/// Tolerances and sampling choices shared by all checks.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct CheckSettings {
    pub strategy: SampleStrategy,
    /// Relative tolerance for sampled estimates.
    pub rel_tol: f64,
    /// Relative tolerance for identities that hold exactly.
    pub identity_tol: f64,
    /// Relative slack of the diameter and volume sandwich.
    pub slack: f64,
    /// Absolute tolerance on angle cosines under orthogonal maps.
    pub angle_tol: f64,
    /// Absolute slack added to the right-hand side of the angle bound.
    pub angle_bound_tol: f64,
    /// Scan at most this many random pairs when measuring isometry constants.
    pub pair_budget: Option<usize>,
}

impl Default for CheckSettings {
    fn default() -> Self {
        Self {
            strategy: SampleStrategy::UniformGrid,
            rel_tol: 0.02,
            identity_tol: 1e-9,
            slack: 1e-6,
            angle_tol: 1e-8,
            angle_bound_tol: 1e-9,
            pair_budget: None,
        }
    }
}

/// Default sample count: 8192 for curves, 16384 for surfaces and above.
pub fn default_samples(intrinsic_dim: usize) -> usize {
    if intrinsic_dim <= 1 {
        8192
    } else {
        16384
    }
}

fn inputs(manifold: &str, map: Option<String>, n: usize, seed: u64, pairs: Option<usize>) -> ReportInputs {
    ReportInputs { manifold: manifold.to_string(), map, n_samples: n, seed, pair_count: pairs }
}

fn measure_isometry(
    map: &dyn SmoothMap,
    sample: &SampledManifold,
    seed: u64,
    s: &CheckSettings,
) -> Result<IsometryReport> {
    match s.pair_budget {
        Some(b) => maps::isometry_constants_budgeted(map, sample, b, seed),
        None => maps::isometry_constants(map, sample),
    }
}

fn record_isometry(r: &mut VerificationReport, iso: &IsometryReport) {
    r.measure("l", iso.l)
        .measure("u", iso.u)
        .measure("delta", iso.delta)
        .measure("pair_count", iso.sample_pair_count as f64);
    if let Some(b) = iso.pair_budget {
        r.note(alloc::format!("isometry constants from a random budget of {b} pairs"));
    }
}

/// Reach of the source manifold: the closed form when known, otherwise the
/// sampled estimate. The second value names the source.
fn source_reach(manifold: &ParametricManifold, sample: &SampledManifold) -> Result<(f64, &'static str)> {
    if let Some(r) = manifold.known_reach() {
        return Ok((r.value(), "closed-form"));
    }
    let est = reach::estimate_reach(sample).map_err(|_| Error::ReachUnavailable)?;
    Ok((est.value.value(), "sampled-estimate"))
}

/// `count` index pairs `(i, j)` with `i ≠ j`, drawn uniformly.
pub fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
    assert!(n >= 2, "need at least two points to draw pairs");
    let mut rng = rng::stream(rng::derive_seed(seed, 1), rng::streams::PAIRS);
    (0..count)
        .map(|_| {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            (i, j)
        })
        .collect()
}

fn require_orthogonal(map: &LinearMapSpec) -> Result<()> {
    if map.is_orthogonal(1e-10) {
        Ok(())
    } else {
        Err(Error::NonOrthogonalMap { sigma_min: map.sigma_min(), sigma_max: map.sigma_max() })
    }
}

fn rel_slack(value: f64, rel: f64) -> f64 {
    if value.is_finite() {
        rel * value.abs()
    } else {
        0.0
    }
}

/// Dimension, diameter and volume under a bi-Lipschitz map, against the
/// sample-measured constants `l`, `u`.
pub fn check_basic_properties(
    manifold: &ParametricManifold,
    map: Arc<dyn SmoothMap>,
    n: usize,
    seed: u64,
    s: &CheckSettings,
) -> Result<VerificationReport> {
    let sample = manifold.sample(n, s.strategy, seed)?;
    let iso = measure_isometry(map.as_ref(), &sample, seed, s)?;
    let image = maps::pushforward(map.as_ref(), &sample)?;
    let k = manifold.intrinsic_dim();

    let mut r = VerificationReport::new(
        "check_basic_properties",
        inputs(manifold.label(), Some(map.label()), sample.len(), seed, None),
        s.slack,
    );
    record_isometry(&mut r, &iso);
    let diam = metrics::diameter(&sample);
    let diam_img = metrics::diameter(&image);
    r.measure("diameter", diam)
        .measure("diameter_image", diam_img)
        .measure("intrinsic_dim_image", image.intrinsic_dim() as f64)
        .set_bound("diameter_lower", iso.l * diam)
        .set_bound("diameter_upper", iso.u * diam);
    r.require(Condition::new("dimension_preserved", image.intrinsic_dim() as f64, Relation::Ge, k as f64, 0.0))
        .require(Condition::new("diameter_lower", diam_img, Relation::Ge, iso.l * diam, rel_slack(iso.l * diam, s.slack)))
        .require(Condition::new("diameter_upper", diam_img, Relation::Le, iso.u * diam, rel_slack(iso.u * diam, s.slack)));

    if k <= 2 {
        let vol = metrics::volume_k(manifold)?;
        let vol_img = metrics::volume_k(&manifold.mapped(map.clone())?)?;
        let (lo, hi) = (iso.l.powi(k as i32) * vol, iso.u.powi(k as i32) * vol);
        r.measure("volume", vol)
            .measure("volume_image", vol_img)
            .set_bound("volume_lower", lo)
            .set_bound("volume_upper", hi);
        r.require(Condition::new("volume_lower", vol_img, Relation::Ge, lo, rel_slack(lo, s.slack)))
            .require(Condition::new("volume_upper", vol_img, Relation::Le, hi, rel_slack(hi, s.slack)));
    } else {
        r.note("volume skipped: intrinsic dimension above 2");
    }
    Ok(r)
}

fn tangent_cosines(
    sample: &SampledManifold,
    image: &SampledManifold,
    pairs: &[(usize, usize)],
) -> Result<Vec<(f64, f64)>> {
    pairs
        .iter()
        .map(|&(i, j)| {
            let before = metrics::principal_angle_cos(&sample.tangents()[i], &sample.tangents()[j])?;
            let after = metrics::principal_angle_cos(&image.tangents()[i], &image.tangents()[j])?;
            Ok((before, after))
        })
        .collect()
}

/// Principal angles between tangent spaces are unchanged by an orthogonal map.
pub fn check_angles_exact(
    manifold: &ParametricManifold,
    map: &LinearMapSpec,
    n: usize,
    pair_count: usize,
    seed: u64,
    s: &CheckSettings,
) -> Result<VerificationReport> {
    require_orthogonal(map)?;
    let sample = manifold.sample(n, s.strategy, seed)?;
    let image = maps::pushforward(map, &sample)?;
    let pairs = random_pairs(sample.len(), pair_count, seed);
    let dev = tangent_cosines(&sample, &image, &pairs)?
        .into_iter()
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let mut r = VerificationReport::new(
        "check_angles_exact",
        inputs(manifold.label(), Some(map.label()), sample.len(), seed, Some(pair_count)),
        s.angle_tol,
    );
    r.measure("max_cos_deviation", dev).set_bound("max_cos_deviation", s.angle_tol);
    r.require(Condition::new("angles_preserved", dev, Relation::Le, s.angle_tol, 0.0));
    Ok(r)
}

/// Right-hand side of the tangent-angle perturbation bound for a pair at
/// distance `dist`.
pub fn angle_bound_rhs(dist: f64, rch: f64, l: f64, u: f64, spectral_norm: f64) -> f64 {
    let delta = maps::isometry_delta(l, u);
    let stretch = spectral_norm.powi(2).max(u * u) + 1.0;
    let curvature = if rch.is_infinite() { 0.0 } else { dist * dist / (rch * rch) };
    25.0 / (4.0 * l * l) * curvature * stretch * stretch + 18.0 / (l * l) * delta.max(delta.sqrt())
}

/// Change in tangent principal angles under a linear near-isometry, against
/// the perturbation bound, for `pair_count` random pairs.
pub fn check_angle_bound(
    manifold: &ParametricManifold,
    map: &LinearMapSpec,
    n: usize,
    pair_count: usize,
    seed: u64,
    s: &CheckSettings,
) -> Result<VerificationReport> {
    let sample = manifold.sample(n, s.strategy, seed)?;
    let iso = measure_isometry(map, &sample, seed, s)?;
    let (rch, source) = source_reach(manifold, &sample)?;
    let image = maps::pushforward(map, &sample)?;
    let pairs = random_pairs(sample.len(), pair_count, seed);
    let cos = tangent_cosines(&sample, &image, &pairs)?;

    let mut worst_excess = f64::NEG_INFINITY;
    let mut max_lhs = 0.0_f64;
    let mut min_rhs = f64::INFINITY;
    let mut violations = 0usize;
    for (&(i, j), (before, after)) in pairs.iter().zip(cos) {
        let d = crate::linalg::dist(sample.points()[i].as_slice(), sample.points()[j].as_slice());
        let lhs = (after - before).abs();
        let rhs = angle_bound_rhs(d, rch, iso.l, iso.u, map.spectral_norm());
        if !(lhs <= rhs + s.angle_bound_tol) {
            violations += 1;
        }
        worst_excess = worst_excess.max(lhs - rhs);
        max_lhs = max_lhs.max(lhs);
        min_rhs = min_rhs.min(rhs);
    }

    let mut r = VerificationReport::new(
        "check_angle_bound",
        inputs(manifold.label(), Some(map.label()), sample.len(), seed, Some(pair_count)),
        s.angle_bound_tol,
    );
    record_isometry(&mut r, &iso);
    r.measure("max_cos_change", max_lhs)
        .measure("worst_excess", worst_excess)
        .measure("violations", violations as f64)
        .measure("spectral_norm", map.spectral_norm())
        .set_bound("rch", rch)
        .set_bound("min_rhs", min_rhs);
    r.note(alloc::format!("rch source: {source}"));
    r.require(Condition::new("lhs_le_rhs", worst_excess, Relation::Le, 0.0, s.angle_bound_tol));
    Ok(r)
}

/// Reach estimates before and after an orthogonal map, on the same sample.
pub fn check_reach_exact(
    manifold: &ParametricManifold,
    map: &LinearMapSpec,
    n: usize,
    seed: u64,
    s: &CheckSettings,
) -> Result<VerificationReport> {
    require_orthogonal(map)?;
    let sample = manifold.sample(n, s.strategy, seed)?;
    let image = maps::pushforward(map, &sample)?;
    let before = reach::estimate_reach(&sample)?.value;
    let after = reach::estimate_reach(&image)?.value;
    let diff = match (before, after) {
        (ReachValue::Infinite, ReachValue::Infinite) => 0.0,
        (a, b) => (a.value() - b.value()).abs(),
    };
    let tol = rel_slack(before.value(), s.identity_tol);

    let mut r = VerificationReport::new(
        "check_reach_exact",
        inputs(manifold.label(), Some(map.label()), sample.len(), seed, None),
        s.identity_tol,
    );
    r.measure("reach", before.value())
        .measure("reach_image", after.value())
        .measure("abs_difference", diff)
        .set_bound("abs_difference", tol);
    r.require(Condition::new("reach_preserved", diff, Relation::Le, tol, 0.0));
    Ok(r)
}

/// Maps the flat segment `{(x, 0) : |x| < 1}` by the smoothed triangle wave
/// and records isometry constants and the reach before and after.
pub fn run_counterexample(delta: f64, c: f64, rho: f64, n: usize, s: &CheckSettings) -> Result<VerificationReport> {
    let cm = CounterexampleMap::new(delta, c, rho)?;
    let segment = zoo::segment();
    let seed = 0;
    let sample = segment.sample(n, s.strategy, seed)?;
    let image = maps::pushforward(&cm, &sample)?;
    let iso = measure_isometry(&cm, &sample, seed, s)?;
    let reach_m = reach::estimate_reach(&sample)?.value.value();
    let reach_img = reach::estimate_reach(&image)?;

    // Heights stay between the flat segment and the triangle wave.
    let mut below = f64::NEG_INFINITY;
    let mut lowest = f64::INFINITY;
    for (p, q) in sample.points().iter().zip(image.points()) {
        below = below.max(q[1] - cm.triangle_height(p[0]));
        lowest = lowest.min(q[1]);
    }

    let upper = cm.upper_constant();
    let reach_cap = cm.reach_upper_bound();
    let mut r = VerificationReport::new(
        "run_counterexample",
        inputs(segment.label(), Some(cm.label()), sample.len(), seed, None),
        s.rel_tol,
    );
    record_isometry(&mut r, &iso);
    r.measure("reach", reach_m)
        .measure("reach_image", reach_img.value.value())
        .measure("max_height_above_triangle", below)
        .measure("min_height", lowest)
        .set_bound("l", 1.0)
        .set_bound("u", upper)
        .set_bound("reach_image", reach_cap);
    r.require(Condition::new("l_at_least_one", iso.l, Relation::Ge, 1.0, 1e-9))
        .require(Condition::new("u_above_one", iso.u, Relation::Gt, 1.0, 0.0))
        .require(Condition::new("u_at_most_one_plus_c_over_delta", iso.u, Relation::Le, upper, 1e-6))
        .require(Condition::new("segment_reach_infinite", reach_m, Relation::Ge, f64::INFINITY, 0.0))
        .require(Condition::new("image_reach_capped", reach_img.value.value(), Relation::Le, reach_cap, s.rel_tol * reach_cap))
        .require(Condition::new("height_below_triangle", below, Relation::Le, 0.0, 1e-9))
        .require(Condition::new("height_nonnegative", lowest, Relation::Ge, 0.0, 1e-12));
    r.note("the segment has a boundary; its reach is taken over the open segment");
    Ok(r)
}

/// Lower bound on the reach of `Φ(M)` for a full-rank `m × n` linear map.
pub fn reach_lower_bound(sigma_min: f64, sigma_max: f64, l: f64, square: bool, rch: f64) -> f64 {
    if square {
        sigma_min * sigma_min / sigma_max * rch
    } else {
        sigma_min * sigma_min * l * l / sigma_max.powi(3) * rch
    }
}

fn reach_lower_bound_on(
    manifold: &ParametricManifold,
    sample: &SampledManifold,
    map: &LinearMapSpec,
    seed: u64,
    s: &CheckSettings,
) -> Result<VerificationReport> {
    let (m, n) = (map.nrows(), map.ncols());
    if m > n {
        return Err(Error::DimensionMismatch(alloc::format!("map is {m}x{n}; need m <= n")));
    }
    if map.rank() < m {
        return Err(Error::RankDeficient { rank: map.rank(), m });
    }
    let iso = measure_isometry(map, sample, seed, s)?;
    let (rch, source) = source_reach(manifold, sample)?;
    let image = maps::pushforward(map, sample)?;
    let measured = reach::estimate_reach(&image)?.value.value();
    let bound = reach_lower_bound(map.sigma_min(), map.sigma_max(), iso.l, m == n, rch);

    let mut r = VerificationReport::new(
        "check_reach_lower_bound",
        inputs(manifold.label(), Some(map.label()), sample.len(), seed, None),
        s.rel_tol,
    );
    record_isometry(&mut r, &iso);
    r.measure("reach_image", measured)
        .measure("sigma_min", map.sigma_min())
        .measure("sigma_max", map.sigma_max())
        .set_bound("rch", rch)
        .set_bound("reach_image", bound);
    if bound.is_finite() && bound > 0.0 {
        r.measure("ratio", measured / bound);
    }
    r.note(alloc::format!("rch source: {source}"));
    r.require(Condition::new("reach_above_bound", measured, Relation::Ge, bound, rel_slack(bound, s.rel_tol)));
    Ok(r)
}

/// Reach of the image of a linear map against the singular-value lower bound.
pub fn check_reach_lower_bound(
    manifold: &ParametricManifold,
    map: &LinearMapSpec,
    n: usize,
    seed: u64,
    s: &CheckSettings,
) -> Result<VerificationReport> {
    let sample = manifold.sample(n, s.strategy, seed)?;
    reach_lower_bound_on(manifold, &sample, map, seed, s)
}

/// Planning figure `⌈(k/δ) · max(1, ln(vol^{1/k} / reach))⌉` for the number of
/// random measurements.
pub fn rip_sample_size(k: usize, delta: f64, vol_k: f64, reach: f64) -> Result<u64> {
    let ok = |x: f64| x > 0.0 && x.is_finite();
    if k == 0 || !(ok(delta) && delta < 1.0 && ok(vol_k) && ok(reach)) {
        return Err(Error::InvalidParameter(alloc::format!(
            "need k >= 1, 0 < delta < 1, positive volume and reach; got k={k}, delta={delta}, vol={vol_k}, reach={reach}"
        )));
    }
    let log = (vol_k.powf(1.0 / k as f64) / reach).ln().max(1.0);
    Ok((k as f64 / delta * log).ceil() as u64)
}

/// Gaussian maps `ℝⁿ → ℝᵐ` applied to one sample, one report per trial plus a
/// closing summary report. Trial `i` draws its map from `derive_seed(seed, i)`.
pub fn random_projection_experiment(
    manifold: &ParametricManifold,
    m: usize,
    n_trials: usize,
    n_samples: usize,
    seed: u64,
    s: &CheckSettings,
) -> Result<Vec<VerificationReport>> {
    let n = manifold.ambient_dim();
    let k = manifold.intrinsic_dim();
    if !(k <= m && m <= n) || n_trials == 0 {
        return Err(Error::InvalidParameter(alloc::format!(
            "need k <= m <= n and at least one trial; got k={k}, m={m}, n={n}, trials={n_trials}"
        )));
    }
    let sample = manifold.sample(n_samples, s.strategy, seed)?;
    let mut reports = Vec::with_capacity(n_trials + 1);
    let mut sigma_sum = 0.0;
    let mut sigma_count = 0usize;
    for trial in 0..n_trials {
        let map_seed = rng::derive_seed(seed, trial as u64);
        let map = maps::make_gaussian_map(m, n, map_seed);
        let mut r = reach_lower_bound_on(manifold, &sample, &map, seed, s)?;
        r.check_name = String::from("random_projection_trial");
        r.inputs.seed = map_seed;
        r.measure("trial", trial as f64);
        sigma_sum += map.singular_values().iter().sum::<f64>();
        sigma_count += map.singular_values().len();
        reports.push(r);
    }

    let passes = reports.iter().filter(|r| r.passed).count();
    let mean_sigma = sigma_sum / sigma_count as f64;
    let target = (n as f64 / m as f64).sqrt();
    let rel_dev = (mean_sigma - target).abs() / target;
    let mut summary = VerificationReport::new(
        "random_projection_summary",
        inputs(manifold.label(), Some(alloc::format!("gaussian(m={m},n={n})")), sample.len(), seed, None),
        0.25,
    );
    summary
        .measure("trials", n_trials as f64)
        .measure("passes", passes as f64)
        .measure("pass_rate", passes as f64 / n_trials as f64)
        .measure("mean_singular_value", mean_sigma)
        .measure("mean_singular_value_rel_dev", rel_dev)
        .set_bound("sqrt_n_over_m", target);
    summary
        .require(Condition::new("all_trials_pass", passes as f64, Relation::Ge, n_trials as f64, 0.0))
        .require(Condition::new("singular_values_cluster", rel_dev, Relation::Le, 0.25, 0.0));
    reports.push(summary);
    Ok(reports)
}

/// Sample-size default for `manifold` when the caller gives none.
pub fn samples_for(manifold: &ParametricManifold, n: Option<usize>) -> usize {
    n.unwrap_or_else(|| default_samples(manifold.intrinsic_dim()))
}

/// Uniform-grid settings with every tolerance at its default.
pub fn grid_settings() -> CheckSettings {
    CheckSettings { strategy: SampleStrategy::UniformGrid, ..CheckSettings::default() }
}
