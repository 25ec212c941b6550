//! On-disk formats.
//!
//! `scan.csv` is the regression artifact: fixed header, integers as-is,
//! floats in scientific notation with 17 significant digits. Nothing in it
//! depends on wall-clock time or thread count.

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use hbt_core::Efficiency;
use serde::Serialize;

use crate::config::ScanSpec;
use crate::scan::{ScanOutcome, Summary};

pub const CSV_HEADER: &str = "y1,n_tot,n_count_d0,n_count_d1,n_coincidence,oracle_coincidence,delta_t";

/// 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_scan_csv<W: Write>(mut w: W, outcome: &ScanOutcome) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for (p, oracle) in outcome.points.iter().zip(outcome.oracle_coincidence()) {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            fmt_float(p.y1),
            p.n_tot,
            p.n_count[0],
            p.n_count[1],
            p.n_coincidence,
            fmt_float(oracle),
            fmt_float(p.delta_t),
        )?;
    }
    w.flush()
}

#[derive(Debug, Serialize)]
pub struct SoftwareInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl SoftwareInfo {
    pub fn current() -> Self {
        SoftwareInfo {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WallClock {
    pub started_unix_seconds: f64,
    pub elapsed_seconds: f64,
}

impl WallClock {
    pub fn new(started: SystemTime, elapsed: Duration) -> Self {
        WallClock {
            started_unix_seconds: started
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs_f64())
                .unwrap_or(0.0),
            elapsed_seconds: elapsed.as_secs_f64(),
        }
    }
}

/// Summary written next to the CSV.
#[derive(Debug, Serialize)]
pub struct SummaryFile<'a> {
    pub preset: Option<&'a str>,
    pub seed: u64,
    #[serde(flatten)]
    pub summary: &'a Summary,
}

/// Full record of a scan run: rerunning with `spec` reproduces `points`.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub software: SoftwareInfo,
    pub seed: u64,
    pub wall_clock: WallClock,
    #[serde(flatten)]
    pub outcome: &'a ScanOutcome,
}

#[derive(Debug, Serialize)]
pub struct EfficiencyManifest<'a> {
    pub software: SoftwareInfo,
    pub seed: u64,
    pub wall_clock: WallClock,
    pub spec: &'a ScanSpec,
    pub efficiency: Efficiency,
    pub fraction: f64,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    text.push('\n');
    fs::write(path, text)
}

pub fn write_scan_outputs(dir: &Path, outcome: &ScanOutcome, clock: WallClock) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let csv = io::BufWriter::new(fs::File::create(dir.join("scan.csv"))?);
    write_scan_csv(csv, outcome)?;
    let seed = outcome.spec.config.seed;
    write_json(
        &dir.join("summary.json"),
        &SummaryFile {
            preset: outcome.spec.preset.map(|p| p.name()),
            seed,
            summary: &outcome.summary,
        },
    )?;
    write_json(
        &dir.join("manifest.json"),
        &RunManifest {
            software: SoftwareInfo::current(),
            seed,
            wall_clock: clock,
            outcome,
        },
    )
}

pub fn write_efficiency_outputs(dir: &Path, spec: &ScanSpec, efficiency: Efficiency, clock: WallClock) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let fraction = efficiency.fraction();
    write_json(
        &dir.join("summary.json"),
        &serde_json::json!({
            "preset": "efficiency",
            "seed": spec.config.seed,
            "messages": efficiency.messages,
            "clicks": efficiency.clicks,
            "efficiency": fraction,
        }),
    )?;
    write_json(
        &dir.join("manifest.json"),
        &EfficiencyManifest {
            software: SoftwareInfo::current(),
            seed: spec.config.seed,
            wall_clock: clock,
            spec,
            efficiency,
            fraction,
        },
    )
}
