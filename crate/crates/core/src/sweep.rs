//! Parameter sweeps, figure presets, self-test and output formats.

pub mod config;
pub mod emit;
pub mod run;
pub mod selftest;

pub use config::{ConfigError, GridSpec, OutputFormat, OutputKind, Preset, SweepConfig};
pub use emit::{write_csv, write_json, write_rows};
pub use run::{run_sweep, run_sweep_with_threads, SweepRow};
pub use selftest::{run_selftest, SelftestOptions, SelftestReport, SuiteResult};
