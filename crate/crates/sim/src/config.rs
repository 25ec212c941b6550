//! Run configuration: presets overlaid by a flat `key = value` file and
//! then by command-line flags (or their `HBT_*` environment variables).

use std::path::Path;

use hbt_core::{DelayConfig, Geometry, RunConfig, Routing, Spectrum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presets::Preset;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error(transparent)]
    Invalid(#[from] hbt_core::Error),
    #[error("invalid scan grid: {0}")]
    InvalidGrid(&'static str),
}

impl ConfigError {
    /// Process exit code: 2 for unreadable or malformed input, 3 for
    /// values that parse but fail validation.
    pub fn exit_code(&self) -> i32 {
        match self {
            ConfigError::Read { .. } | ConfigError::Parse { .. } | ConfigError::UnknownKey(_) => 2,
            ConfigError::Invalid(_) | ConfigError::InvalidGrid(_) => 3,
        }
    }
}

/// Evenly spaced `D_1` positions, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Default for Grid {
    /// Two fringe periods at the published geometry, 20 points per period.
    fn default() -> Self {
        Grid {
            min: -50.0,
            max: 50.0,
            steps: 41,
        }
    }
}

impl Grid {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.steps == 0 {
            return Err(ConfigError::InvalidGrid("y1-steps must be at least one"));
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(ConfigError::InvalidGrid("y1 bounds must be finite"));
        }
        if self.min > self.max {
            return Err(ConfigError::InvalidGrid("y1-min exceeds y1-max"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let span = self.max - self.min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.min + span * i as f64 / last)
            .collect()
    }
}

/// Everything needed to reproduce a run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub preset: Option<Preset>,
    pub geometry: Geometry,
    pub config: RunConfig,
    pub grid: Grid,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.geometry.validate()?;
        self.config.validate()?;
        self.grid.validate()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralMode {
    Mono,
    Pdc,
}

impl std::str::FromStr for SpectralMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mono" => Ok(SpectralMode::Mono),
            "pdc" => Ok(SpectralMode::Pdc),
            _ => Err(format!("expected `mono` or `pdc`, got `{s}`")),
        }
    }
}

pub fn parse_routing(s: &str) -> Result<Routing, String> {
    match s {
        "classical" => Ok(Routing::Classical),
        "boson" => Ok(Routing::Boson),
        _ => Err(format!("expected `classical` or `boson`, got `{s}`")),
    }
}

/// A partial configuration; unset fields leave the base untouched.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub n_tot: Option<u64>,
    pub n_f: Option<u64>,
    pub gamma: Option<f64>,
    pub big_x: Option<f64>,
    pub d: Option<f64>,
    pub y1_min: Option<f64>,
    pub y1_max: Option<f64>,
    pub y1_steps: Option<usize>,
    pub routing: Option<Routing>,
    pub delay: Option<bool>,
    pub tmax: Option<f64>,
    pub window: Option<f64>,
    pub h: Option<f64>,
    pub spectral: Option<SpectralMode>,
    pub f0: Option<f64>,
    pub linewidth: Option<f64>,
    pub seed: Option<u64>,
    pub reinitialize: Option<bool>,
}

impl Overrides {
    pub fn apply(&self, spec: &mut ScanSpec) {
        let cfg = &mut spec.config;
        if let Some(v) = self.n_tot {
            cfg.n_tot = v;
        }
        if let Some(v) = self.n_f {
            cfg.block_size = v;
        }
        if let Some(v) = self.gamma {
            cfg.gamma = v;
        }
        if let Some(v) = self.routing {
            cfg.routing = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.reinitialize {
            cfg.reinitialize = v;
        }

        let wants_delay = self.delay.unwrap_or(cfg.delay.is_some())
            || (self.delay.is_none() && (self.tmax.is_some() || self.window.is_some() || self.h.is_some()));
        cfg.delay = if wants_delay {
            let mut d = cfg.delay.unwrap_or(DelayConfig {
                t_max: 1000.0,
                exponent: 8.0,
                window: 1.0,
            });
            if let Some(v) = self.tmax {
                d.t_max = v;
            }
            if let Some(v) = self.window {
                d.window = v;
            }
            if let Some(v) = self.h {
                d.exponent = v;
            }
            Some(d)
        } else {
            None
        };

        let pdc = match self.spectral {
            Some(mode) => mode == SpectralMode::Pdc,
            None => {
                matches!(cfg.spectrum, Spectrum::DownConversion { .. })
                    || self.f0.is_some()
                    || self.linewidth.is_some()
            }
        };
        cfg.spectrum = if pdc {
            let (pump, width) = match cfg.spectrum {
                Spectrum::DownConversion { pump, linewidth } => (pump, Some(linewidth)),
                Spectrum::Monochromatic { frequency } => (2.0 * frequency, None),
            };
            let pump = self.f0.unwrap_or(pump);
            let linewidth = self
                .linewidth
                .or(if self.f0.is_some() { None } else { width })
                .unwrap_or(pump / 20.0);
            Spectrum::DownConversion { pump, linewidth }
        } else {
            match cfg.spectrum {
                Spectrum::DownConversion { pump, .. } => Spectrum::Monochromatic {
                    frequency: 0.5 * pump,
                },
                mono => mono,
            }
        };

        if let Some(v) = self.big_x {
            spec.geometry.screen_distance = v;
        }
        if let Some(v) = self.d {
            spec.geometry.separation = v;
        }
        if let Some(v) = self.y1_min {
            spec.grid.min = v;
        }
        if let Some(v) = self.y1_max {
            spec.grid.max = v;
        }
        if let Some(v) = self.y1_steps {
            spec.grid.steps = v;
        }
    }

    /// Parse a flat `key = value` file. Keys use the flag names with or
    /// without the leading dashes; `_` and `-` are interchangeable; `#`
    /// starts a comment.
    pub fn parse_file(text: &str) -> Result<Self, ConfigError> {
        let mut o = Overrides::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| ConfigError::Parse {
                    line: line_no,
                    message: format!("expected `key = value`, got `{line}`"),
                })?;
            let key = key.trim_start_matches('-').replace('_', "-");
            o.set(&key, value).map_err(|e| match e {
                SetError::Unknown => ConfigError::UnknownKey(key.clone()),
                SetError::Value(message) => ConfigError::Parse {
                    line: line_no,
                    message: format!("{key}: {message}"),
                },
            })?;
        }
        Ok(o)
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_file(&text)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), SetError> {
        fn num<T: std::str::FromStr>(v: &str) -> Result<T, SetError>
        where
            T::Err: std::fmt::Display,
        {
            v.parse::<T>().map_err(|e| SetError::Value(e.to_string()))
        }
        fn flag(v: &str) -> Result<bool, SetError> {
            match v {
                "true" | "1" | "yes" | "on" => Ok(true),
                "false" | "0" | "no" | "off" => Ok(false),
                _ => Err(SetError::Value(format!("expected a boolean, got `{v}`"))),
            }
        }
        match key {
            "n-tot" => self.n_tot = Some(num(value)?),
            "n-f" => self.n_f = Some(num(value)?),
            "gamma" => self.gamma = Some(num(value)?),
            "big-x" => self.big_x = Some(num(value)?),
            "d" => self.d = Some(num(value)?),
            "y1-min" => self.y1_min = Some(num(value)?),
            "y1-max" => self.y1_max = Some(num(value)?),
            "y1-steps" => self.y1_steps = Some(num(value)?),
            "routing" => self.routing = Some(parse_routing(value).map_err(SetError::Value)?),
            "delay" => self.delay = Some(flag(value)?),
            "tmax" => self.tmax = Some(num(value)?),
            "window" => self.window = Some(num(value)?),
            "h" => self.h = Some(num(value)?),
            "spectral" => self.spectral = Some(value.parse().map_err(SetError::Value)?),
            "f0" => self.f0 = Some(num(value)?),
            "linewidth" => self.linewidth = Some(num(value)?),
            "seed" => self.seed = Some(num(value)?),
            "reinitialize" => self.reinitialize = Some(flag(value)?),
            _ => return Err(SetError::Unknown),
        }
        Ok(())
    }
}

enum SetError {
    Unknown,
    Value(String),
}
