//! Report sinks: the JSON document, the CSV summary and the console lines.
//!
//! CSV columns, in this order:
//!
//! ```text
//! check_name,index,manifold,map,n_samples,seed,measured,bound,passed
//! ```
//!
//! `measured` and `bound` hold `name=value` entries joined by `;`, sorted by
//! name. Infinite values print as `inf`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use reachlab_core::verify::{Relation, VerificationReport};
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

pub const CSV_HEADER: [&str; 9] =
    ["check_name", "index", "manifold", "map", "n_samples", "seed", "measured", "bound", "passed"];

#[derive(Debug, Serialize)]
pub struct ReportDocument<'a> {
    pub schema_version: &'static str,
    pub tool_version: &'static str,
    pub config: &'a ExperimentConfig,
    pub passed: bool,
    pub reports: &'a [VerificationReport],
}

impl<'a> ReportDocument<'a> {
    pub fn new(config: &'a ExperimentConfig, reports: &'a [VerificationReport]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            config,
            passed: reports.iter().all(|r| r.passed),
            reports,
        }
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io { path: path.display().to_string(), message: e.to_string() }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| io_err(path, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(path, e))?;
    tmp.write_all(bytes).map_err(|e| io_err(path, e))?;
    tmp.as_file().sync_all().map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}

pub fn to_json(doc: &ReportDocument<'_>) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
    s.push('\n');
    s
}

fn joined(m: &BTreeMap<String, f64>) -> String {
    m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for (i, r) in reports.iter().enumerate() {
        w.write_record([
            r.check_name.as_str(),
            &i.to_string(),
            &r.inputs.manifold,
            r.inputs.map.as_deref().unwrap_or(""),
            &r.inputs.n_samples.to_string(),
            &r.inputs.seed.to_string(),
            &joined(&r.measured),
            &joined(&r.bound),
            if r.passed { "true" } else { "false" },
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn relation(r: Relation) -> &'static str {
    match r {
        Relation::Le => "<=",
        Relation::Ge => ">=",
        Relation::Lt => "<",
        Relation::Gt => ">",
    }
}

/// One summary line per report.
pub fn summary_line(index: usize, r: &VerificationReport) -> String {
    let shown: Vec<String> = r.measured.iter().take(6).map(|(k, v)| format!("{k}={v:.6}")).collect();
    format!(
        "{} {}#{} [{}{}] N={} seed={}: {}",
        if r.passed { "PASS" } else { "FAIL" },
        r.check_name,
        index,
        r.inputs.manifold,
        r.inputs.map.as_deref().map(|m| format!(" | {m}")).unwrap_or_default(),
        r.inputs.n_samples,
        r.inputs.seed,
        shown.join(" ")
    )
}

/// One diagnostic line per failed condition.
pub fn failure_lines(index: usize, r: &VerificationReport) -> Vec<String> {
    r.failed_conditions()
        .map(|c| {
            format!(
                "failure: {}#{}: {}: {} {} {} (tolerance {})",
                r.check_name,
                index,
                c.name,
                c.lhs,
                relation(c.relation),
                c.rhs,
                c.tolerance
            )
        })
        .collect()
}
