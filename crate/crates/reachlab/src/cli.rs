//! Command line front end.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check or a runtime
//! error, 2 when the config cannot be parsed and 3 when it parses but is
//! invalid. Nothing is written for exit codes 2 and 3.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{ExperimentConfig, Operation};
use crate::error::CliError;
use crate::ops;
use crate::output::{self, ReportDocument, SCHEMA_VERSION};

/// Thread count for the pair scans; unset or 0 lets rayon decide.
pub const THREADS_ENV: &str = "REACHLAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "reachlab", version, about = "Reach and bi-Lipschitz checks on sampled manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the experiment described by a TOML config or an earlier JSON report.
    Run {
        config: PathBuf,
        /// Write the JSON report here (overrides `output.json`).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the CSV summary here (overrides `output.csv`).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List the manifolds, maps and operations a config may name.
    ListZoo,
    /// Print the tool and report schema versions.
    Version,
}

const ZOO: &[(&str, &str, &str)] = &[
    ("circle", "radius = 1.0", "radius > 0; curve in R^2; reach = radius"),
    ("ellipse", "radii = [a, b]", "a, b > 0; curve in R^2; reach = min^2/max"),
    ("ellipsoid", "radii = [a, b, c]", "all > 0; surface in R^3; reach = min^2/max"),
    ("sphere", "radius = 1.0", "radius > 0; surface in R^3; reach = radius"),
    ("tilted-circle", "theta", "finite; unit circle in R^3; reach = 1"),
    ("trefoil", "-", "curve in R^3; reach estimated from samples"),
    ("segment", "-", "open segment (-1, 1) x {0} in R^2; reach = inf"),
    (
        "padded",
        "ambient_dim, rotation_seed, inner = { name = ... }",
        "ambient_dim >= inner ambient dim; keeps the inner reach",
    ),
];

const MAPS: &[(&str, &str, &str)] = &[
    ("gaussian", "m, n, seed", "m x n entries drawn from N(0, 1/m)"),
    ("orthogonal", "n, seed", "seeded n x n rotation; seed 0 is the identity"),
    ("matrix", "rows = [[...], ...]", "explicit matrix, rows of equal length"),
    ("projection", "m, n", "keeps the first m of n coordinates; m <= n"),
    ("counterexample", "delta, c, rho", "0 < c < delta < 1, 0 < rho < delta/2; maps R^2 to R^2"),
];

/// Deterministic listing printed by `list-zoo`.
pub fn zoo_listing() -> String {
    let mut s = String::from("manifolds ([manifold] name = ...):\n");
    for (name, params, range) in ZOO {
        s.push_str(&format!("  {name:<15} {params:<52} {range}\n"));
    }
    s.push_str("\nmaps ([map] kind = ...):\n");
    for (name, params, range) in MAPS {
        s.push_str(&format!("  {name:<15} {params:<52} {range}\n"));
    }
    s.push_str("\noperations (operation = ...):\n");
    for op in Operation::ALL {
        s.push_str(&format!("  {}\n", op.name()));
    }
    s
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("{THREADS_ENV} must be a non-negative integer, got {raw:?}")))?;
    // A second initialisation in the same process is harmless; keep the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Loads, runs and writes one experiment. Returns whether every report passed.
pub fn run(config: &PathBuf, json: Option<PathBuf>, csv: Option<PathBuf>) -> Result<bool, CliError> {
    let cfg = ExperimentConfig::load(config)?;
    let resolved = cfg.resolve()?;
    configure_threads()?;
    let reports = ops::execute(&resolved)?;

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut err = std::io::stderr().lock();
    for (i, r) in reports.iter().enumerate() {
        let _ = writeln!(out, "{}", output::summary_line(i, r));
        for line in output::failure_lines(i, r) {
            let _ = writeln!(err, "{line}");
        }
    }

    let json = json.or_else(|| resolved.config.output.json.clone());
    let csv = csv.or_else(|| resolved.config.output.csv.clone());
    if let Some(p) = json {
        let doc = ReportDocument::new(&resolved.config, &reports);
        output::write_atomic(&p, output::to_json(&doc).as_bytes())?;
    }
    if let Some(p) = csv {
        output::write_atomic(&p, output::to_csv(&reports).as_bytes())?;
    }
    let passed = reports.iter().all(|r| r.passed);
    let _ = writeln!(out, "{} ({} report(s))", if passed { "PASSED" } else { "FAILED" }, reports.len());
    Ok(passed)
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Version => {
            println!("reachlab {} (report schema {SCHEMA_VERSION})", env!("CARGO_PKG_VERSION"));
            ExitCode::SUCCESS
        }
        Command::ListZoo => {
            print!("{}", zoo_listing());
            ExitCode::SUCCESS
        }
        Command::Run { config, json, csv } => match run(&config, json, csv) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code())
            }
        },
    }
}
