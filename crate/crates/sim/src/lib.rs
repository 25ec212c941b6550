//! Runner for `hbt-core`: presets, configuration files, parallel scans and
//! the on-disk outputs (`scan.csv`, `summary.json`, `manifest.json`).

pub mod cli;
pub mod config;
pub mod output;
pub mod presets;
pub mod scan;

pub use config::{ConfigError, Grid, ScanSpec};
pub use presets::Preset;
pub use scan::{run_scan_parallel, ScanOutcome, Summary};
