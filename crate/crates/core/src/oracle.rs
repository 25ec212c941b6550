//! Closed-form wave-theory predictions for the two-source setup.

use alloc::vec::Vec;

use crate::geometry::Geometry;
use crate::math::{cos, TAU};
use crate::Error;

/// Which intensity-correlation law to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum CorrelationMode {
    /// Independent classical sources: contrast 1/2.
    Classical,
    /// Field treated as bosons: contrast 1.
    Boson,
}

impl CorrelationMode {
    fn contrast(self) -> f64 {
        match self {
            CorrelationMode::Classical => 0.5,
            CorrelationMode::Boson => 1.0,
        }
    }
}

/// Predictions at one position of `D_1`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WavePrediction {
    pub y1: f64,
    pub delta_t: f64,
    pub mean_intensity: f64,
    pub correlation_classical: f64,
    pub correlation_boson: f64,
    /// Expected event-model coincidences per pair.
    pub coincidence_fraction: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveOracle {
    pub geometry: Geometry,
    pub frequency: f64,
    pub amplitude: f64,
}

impl WaveOracle {
    pub fn new(geometry: Geometry, frequency: f64) -> Self {
        WaveOracle {
            geometry,
            frequency,
            amplitude: 1.0,
        }
    }

    /// `I_n` for fixed source phases.
    pub fn intensity(&self, detector: usize, phases: [f64; 2]) -> f64 {
        let a2 = self.amplitude * self.amplitude;
        let arg = phases[0] - phases[1] + TAU * self.frequency * self.geometry.path_difference(detector);
        2.0 * a2 * (1.0 + cos(arg))
    }

    /// `⟨I_n⟩` over uniformly random phases.
    pub fn mean_intensity(&self) -> f64 {
        2.0 * self.amplitude * self.amplitude
    }

    fn fringe(&self, y1: f64) -> f64 {
        cos(TAU * self.frequency * self.geometry.with_y1(y1).delta_t())
    }

    /// `⟨I_0 I_1⟩` with `D_1` at `y1`.
    pub fn correlation(&self, y1: f64, mode: CorrelationMode) -> f64 {
        let a2 = self.amplitude * self.amplitude;
        let a4 = a2 * a2;
        4.0 * a4 * (1.0 + mode.contrast() * self.fringe(y1))
    }

    /// Expected coincidences of the event model (no delay, classical
    /// routing): `(N_tot/8)(1 + ½ cos 2πfΔT)`.
    pub fn predicted_coincidence(&self, y1: f64, n_tot: u64) -> f64 {
        n_tot as f64 / 8.0 * (1.0 + 0.5 * self.fringe(y1))
    }

    pub fn predict(&self, y1: f64) -> WavePrediction {
        WavePrediction {
            y1,
            delta_t: self.geometry.with_y1(y1).delta_t(),
            mean_intensity: self.mean_intensity(),
            correlation_classical: self.correlation(y1, CorrelationMode::Classical),
            correlation_boson: self.correlation(y1, CorrelationMode::Boson),
            coincidence_fraction: self.predicted_coincidence(y1, 1),
        }
    }

    pub fn curve(&self, y1_values: &[f64], mode: CorrelationMode) -> Vec<f64> {
        y1_values.iter().map(|&y| self.correlation(y, mode)).collect()
    }
}

/// `(max − min)/(max + min)`.
pub fn visibility(values: &[f64]) -> Result<f64, Error> {
    let (min, max) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let sum = max + min;
    if values.is_empty() || sum.is_nan() || sum <= 0.0 {
        return Err(Error::UndefinedVisibility);
    }
    Ok((max - min) / (max + min))
}
