//! Dispatch from a resolved config to the checks in `reachlab_core`.

use reachlab_core::maps::{self, MapSpec};
use reachlab_core::metrics;
use reachlab_core::reach;
use reachlab_core::verify::{self, Condition, Relation, ReportInputs, VerificationReport};
use reachlab_core::ParametricManifold;

use crate::config::{Operation, Resolved};
use crate::error::CliError;

fn source_reach(m: &ParametricManifold, n: usize, r: &Resolved) -> Result<(f64, &'static str), CliError> {
    if let Some(v) = m.known_reach() {
        return Ok((v.value(), "closed-form"));
    }
    let sample = m.sample(n, r.config.run.strategy, r.config.run.seed)?;
    Ok((reach::estimate_reach(&sample)?.value.value(), "sampled-estimate"))
}

/// Runs the configured operation and returns its reports in order.
pub fn execute(r: &Resolved) -> Result<Vec<VerificationReport>, CliError> {
    let cfg = &r.config;
    let run = &cfg.run;
    let s = &cfg.tolerances;
    let n = run.n_samples.expect("resolved config has a sample count");
    let manifold = r.manifold.as_ref();
    let linear = r.map.as_ref().and_then(|m| m.linear());
    let m = || manifold.expect("validated");
    let lin = || linear.expect("validated");

    let reports = match cfg.operation {
        Operation::CheckBasicProperties => {
            let map = r.map.clone().expect("validated").into_arc();
            vec![verify::check_basic_properties(m(), map, n, run.seed, s)?]
        }
        Operation::CheckAnglesExact => {
            vec![verify::check_angles_exact(m(), lin(), n, run.pair_count, run.seed, s)?]
        }
        Operation::CheckAngleBound => {
            vec![verify::check_angle_bound(m(), lin(), n, run.pair_count, run.seed, s)?]
        }
        Operation::CheckReachExact => vec![verify::check_reach_exact(m(), lin(), n, run.seed, s)?],
        Operation::CheckReachLowerBound => {
            vec![verify::check_reach_lower_bound(m(), lin(), n, run.seed, s)?]
        }
        Operation::RunCounterexample => match cfg.map {
            Some(MapSpec::Counterexample { delta, c, rho }) => {
                vec![verify::run_counterexample(delta, c, rho, n, s)?]
            }
            _ => unreachable!("validated"),
        },
        Operation::RandomProjectionExperiment => verify::random_projection_experiment(
            m(),
            run.m.expect("validated"),
            run.n_trials,
            n,
            run.seed,
            s,
        )?,
        Operation::EstimateReach => {
            let sample = m().sample(n, run.strategy, run.seed)?;
            let est = reach::estimate_reach(&sample)?;
            let mut rep = VerificationReport::new("estimate_reach", inputs(m().label(), None, n, run.seed), s.rel_tol);
            rep.measure("reach", est.value.value());
            if let Some((i, j)) = est.attaining_pair {
                rep.measure("attaining_i", i as f64).measure("attaining_j", j as f64);
            }
            if let Some(known) = m().known_reach() {
                rep.set_bound("closed_form", known.value());
                let tol = if known.is_infinite() { 0.0 } else { s.rel_tol * known.value() };
                rep.require(Condition::new("not_below_closed_form", est.value.value(), Relation::Ge, known.value(), tol))
                    .require(Condition::new("not_above_closed_form", est.value.value(), Relation::Le, known.value(), tol));
            }
            vec![rep]
        }
        Operation::IsometryConstants => {
            let map = r.map.as_ref().expect("validated").as_smooth();
            let sample = m().sample(n, run.strategy, run.seed)?;
            let iso = match s.pair_budget {
                Some(b) => maps::isometry_constants_budgeted(map, &sample, b, run.seed)?,
                None => maps::isometry_constants(map, &sample)?,
            };
            let mut rep = VerificationReport::new(
                "isometry_constants",
                inputs(m().label(), Some(map.label()), n, run.seed),
                0.0,
            );
            rep.measure("l", iso.l)
                .measure("u", iso.u)
                .measure("delta", iso.delta)
                .measure("pair_count", iso.sample_pair_count as f64);
            vec![rep]
        }
        Operation::RipSampleSize => {
            let k = m().intrinsic_dim();
            let vol = metrics::volume_k(m())?;
            let (rch, source) = source_reach(m(), n, r)?;
            let delta = run.rip_delta.expect("validated");
            let size = verify::rip_sample_size(k, delta, vol, rch)?;
            let mut rep = VerificationReport::new("rip_sample_size", inputs(m().label(), None, n, run.seed), 0.0);
            rep.measure("sample_size", size as f64)
                .measure("volume", vol)
                .measure("reach", rch)
                .measure("delta", delta);
            rep.note(format!("rch source: {source}"));
            vec![rep]
        }
    };
    Ok(reports)
}

fn inputs(manifold: &str, map: Option<String>, n: usize, seed: u64) -> ReportInputs {
    ReportInputs { manifold: manifold.to_string(), map, n_samples: n, seed, pair_count: None }
}
