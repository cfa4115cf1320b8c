//! Experiment configuration.
//!
//! Configs are TOML. A top-level `operation` key names what to run; the
//! optional tables `[manifold]`, `[map]`, `[run]`, `[tolerances]` and
//! `[output]` supply its inputs. A JSON report carries the fully resolved
//! config under `"config"` and can be fed back to `run` as-is.

use std::path::{Path, PathBuf};

use reachlab_core::maps::{BuiltMap, MapSpec};
use reachlab_core::verify::{self, CheckSettings};
use reachlab_core::zoo::ZooSpec;
use reachlab_core::{ParametricManifold, SampleStrategy};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    CheckBasicProperties,
    CheckAnglesExact,
    CheckAngleBound,
    CheckReachExact,
    CheckReachLowerBound,
    RunCounterexample,
    RandomProjectionExperiment,
    EstimateReach,
    IsometryConstants,
    RipSampleSize,
}

impl Operation {
    pub const ALL: [Operation; 10] = [
        Operation::CheckBasicProperties,
        Operation::CheckAnglesExact,
        Operation::CheckAngleBound,
        Operation::CheckReachExact,
        Operation::CheckReachLowerBound,
        Operation::RunCounterexample,
        Operation::RandomProjectionExperiment,
        Operation::EstimateReach,
        Operation::IsometryConstants,
        Operation::RipSampleSize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operation::CheckBasicProperties => "check_basic_properties",
            Operation::CheckAnglesExact => "check_angles_exact",
            Operation::CheckAngleBound => "check_angle_bound",
            Operation::CheckReachExact => "check_reach_exact",
            Operation::CheckReachLowerBound => "check_reach_lower_bound",
            Operation::RunCounterexample => "run_counterexample",
            Operation::RandomProjectionExperiment => "random_projection_experiment",
            Operation::EstimateReach => "estimate_reach",
            Operation::IsometryConstants => "isometry_constants",
            Operation::RipSampleSize => "rip_sample_size",
        }
    }

    fn needs_manifold(self) -> bool {
        !matches!(self, Operation::RunCounterexample)
    }

    fn needs_map(self) -> bool {
        !matches!(
            self,
            Operation::RandomProjectionExperiment | Operation::EstimateReach | Operation::RipSampleSize
        )
    }

    fn needs_linear_map(self) -> bool {
        matches!(
            self,
            Operation::CheckAnglesExact
                | Operation::CheckAngleBound
                | Operation::CheckReachExact
                | Operation::CheckReachLowerBound
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunParams {
    /// Sample count; defaults to 8192 for curves and 16384 for surfaces.
    pub n_samples: Option<usize>,
    pub pair_count: usize,
    pub n_trials: usize,
    pub seed: u64,
    pub strategy: SampleStrategy,
    /// Target dimension for `random_projection_experiment`.
    pub m: Option<usize>,
    /// Isometry constant for `rip_sample_size`.
    pub rip_delta: Option<f64>,
}

impl Default for RunParams {
    fn default() -> Self {
        Self {
            n_samples: None,
            pair_count: 1000,
            n_trials: 100,
            seed: 0,
            strategy: SampleStrategy::UniformGrid,
            m: None,
            rip_delta: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputPaths {
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub operation: Operation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifold: Option<ZooSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSpec>,
    #[serde(default)]
    pub run: RunParams,
    #[serde(default)]
    pub tolerances: CheckSettings,
    #[serde(default)]
    pub output: OutputPaths,
}

/// A validated config with its manifold and map built.
pub struct Resolved {
    pub config: ExperimentConfig,
    pub manifold: Option<ParametricManifold>,
    pub map: Option<BuiltMap>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Reads a TOML config, or a JSON report whose embedded config is reused.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
            || text.trim_start().starts_with('{');
        if is_json {
            let mut value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
            let config = value
                .get_mut("config")
                .map(serde_json::Value::take)
                .ok_or_else(|| CliError::Parse(String::from("JSON input has no \"config\" field")))?;
            serde_json::from_value(config).map_err(|e| CliError::Parse(e.to_string()))
        } else {
            Self::from_toml(&text)
        }
    }

    /// Checks references and ranges, fills defaults and builds the manifold
    /// and map.
    pub fn resolve(mut self) -> Result<Resolved, CliError> {
        let op = self.operation;
        let invalid = |msg: String| CliError::Validation(msg);

        let manifold = match (&self.manifold, op.needs_manifold()) {
            (Some(spec), _) => Some(spec.build().map_err(|e| invalid(format!("[manifold]: {e}")))?),
            (None, true) => return Err(invalid(format!("{} needs a [manifold] table", op.name()))),
            (None, false) => None,
        };
        let map = match (&self.map, op.needs_map()) {
            (Some(spec), _) => Some(spec.build().map_err(|e| invalid(format!("[map]: {e}")))?),
            (None, true) => return Err(invalid(format!("{} needs a [map] table", op.name()))),
            (None, false) => None,
        };

        if let (Some(m), Some(f)) = (&manifold, &map) {
            let dom = f.as_smooth().domain_dim();
            if dom != m.ambient_dim() {
                return Err(invalid(format!(
                    "map takes R^{dom} but {} lives in R^{}",
                    m.label(),
                    m.ambient_dim()
                )));
            }
        }
        if op.needs_linear_map() && map.as_ref().and_then(BuiltMap::linear).is_none() {
            return Err(invalid(format!("{} needs a linear map", op.name())));
        }
        if matches!(op, Operation::CheckAnglesExact | Operation::CheckReachExact) {
            let lin = map.as_ref().and_then(BuiltMap::linear).expect("checked above");
            if !lin.is_orthogonal(1e-10) {
                return Err(invalid(format!(
                    "{} needs an orthogonal map; singular values span [{}, {}]",
                    op.name(),
                    lin.sigma_min(),
                    lin.sigma_max()
                )));
            }
        }
        if op == Operation::RunCounterexample && !matches!(self.map, Some(MapSpec::Counterexample { .. })) {
            return Err(invalid(String::from("run_counterexample needs a counterexample [map]")));
        }
        if op == Operation::RunCounterexample && !matches!(self.manifold, None | Some(ZooSpec::Segment)) {
            return Err(invalid(String::from("run_counterexample always maps the segment")));
        }
        if op == Operation::RandomProjectionExperiment {
            let m = self.run.m.ok_or_else(|| invalid(String::from("random_projection_experiment needs run.m")))?;
            let mf = manifold.as_ref().expect("checked above");
            if m < mf.intrinsic_dim() || m > mf.ambient_dim() {
                return Err(invalid(format!(
                    "run.m = {m} must lie between the intrinsic ({}) and ambient ({}) dimensions",
                    mf.intrinsic_dim(),
                    mf.ambient_dim()
                )));
            }
            if self.run.n_trials == 0 {
                return Err(invalid(String::from("run.n_trials must be at least 1")));
            }
        }
        if op == Operation::RipSampleSize {
            match self.run.rip_delta {
                Some(d) if d > 0.0 && d < 1.0 => {}
                _ => return Err(invalid(String::from("rip_sample_size needs 0 < run.rip_delta < 1"))),
            }
        }

        let intrinsic = manifold.as_ref().map_or(1, ParametricManifold::intrinsic_dim);
        let n = *self.run.n_samples.get_or_insert_with(|| verify::default_samples(intrinsic));
        if n < 2 {
            return Err(invalid(format!("run.n_samples must be at least 2, got {n}")));
        }
        if self.run.pair_count == 0 {
            return Err(invalid(String::from("run.pair_count must be at least 1")));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("rel_tol", t.rel_tol),
            ("identity_tol", t.identity_tol),
            ("slack", t.slack),
            ("angle_tol", t.angle_tol),
            ("angle_bound_tol", t.angle_bound_tol),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(format!("tolerances.{name} must be a finite non-negative number")));
            }
        }
        // The [run] strategy is authoritative.
        self.tolerances.strategy = self.run.strategy;
        Ok(Resolved { config: self, manifold, map })
    }
}
