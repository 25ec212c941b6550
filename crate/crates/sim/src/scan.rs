use hbt_core::analysis::{fit_singles, SinglesFit};
use hbt_core::oracle::WavePrediction;
use hbt_core::{
    fit_fringe, run_point, run_scan, visibility_from_counts, Error, FitResult, Geometry, RunConfig,
    ScanPoint, WaveOracle,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ScanSpec;

/// Scan points in parallel; output is identical to the sequential
/// `hbt_core::run_scan` because each point owns its random substreams.
pub fn run_scan_parallel(geometry: &Geometry, config: &RunConfig, y1_values: &[f64]) -> Result<Vec<ScanPoint>, Error> {
    if !config.reinitialize {
        return run_scan(geometry, config, y1_values);
    }
    config.validate()?;
    geometry.validate()?;
    y1_values
        .par_iter()
        .enumerate()
        .map(|(i, &y1)| run_point(geometry, config, y1, i as u64))
        .collect()
}

/// Fit outputs and visibilities for one scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    /// `N_coincidence / N_tot ≈ a (1 + b cos 2πfΔT)`.
    pub coincidence: Option<FitResult>,
    pub singles: Vec<SinglesFit>,
    /// Max/min visibility of the raw coincidence counts.
    pub visibility_raw: Option<f64>,
    /// Fitted contrast clamped to `[0, 1]`.
    pub visibility_fit: Option<f64>,
}

impl Summary {
    pub fn of(points: &[ScanPoint], frequency: f64) -> Self {
        let coincidence = fit_fringe(points, frequency).ok();
        let singles = (0..2)
            .filter_map(|d| fit_singles(points, d, frequency).ok())
            .collect();
        Summary {
            coincidence,
            singles,
            visibility_raw: visibility_from_counts(points).ok(),
            visibility_fit: coincidence.map(|f| f.visibility),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub spec: ScanSpec,
    pub points: Vec<ScanPoint>,
    pub summary: Summary,
    pub oracle: Vec<WavePrediction>,
}

impl ScanOutcome {
    pub fn run(spec: &ScanSpec) -> Result<Self, Error> {
        let y1 = spec.grid.values();
        let points = run_scan_parallel(&spec.geometry, &spec.config, &y1)?;
        let frequency = spec.config.spectrum.fringe_frequency();
        let oracle = WaveOracle::new(spec.geometry, frequency);
        Ok(ScanOutcome {
            spec: *spec,
            summary: Summary::of(&points, frequency),
            oracle: y1.iter().map(|&y| oracle.predict(y)).collect(),
            points,
        })
    }

    /// Classical event-model prediction of the coincidence count per point.
    pub fn oracle_coincidence(&self) -> impl Iterator<Item = f64> + '_ {
        self.points
            .iter()
            .zip(&self.oracle)
            .map(|(p, o)| o.coincidence_fraction * p.n_tot as f64)
    }
}
