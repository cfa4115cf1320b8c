//! Experiment runner for the `reachlab-core` checks.
//!
//! A run reads one TOML config, executes a single operation and writes its
//! reports as JSON and CSV. See `config` for the file format.

pub mod cli;
pub mod config;
pub mod error;
pub mod ops;
pub mod output;

pub use error::CliError;
pub use output::SCHEMA_VERSION;
