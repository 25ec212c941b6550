//! Stochastic click delay and windowed coincidence.

use crate::detector::TransformOutput;
use crate::math::{ln, powf};
use crate::Error;

/// Parameters of the click-delay model.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DelayConfig {
    /// Time scale of the delay, in units of `1/f`.
    pub t_max: f64,
    /// Exponent applied to `1 − |T|²`.
    pub exponent: f64,
    /// Coincidence window `W`, in units of `1/f`.
    pub window: f64,
}

impl DelayConfig {
    pub fn new(t_max: f64, exponent: f64, window: f64) -> Result<Self, Error> {
        let cfg = DelayConfig {
            t_max,
            exponent,
            window,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "tmax",
                reason: "must be positive",
            });
        }
        if !(self.window > 0.0 && self.window.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "window",
                reason: "must be positive",
            });
        }
        if !(self.exponent >= 0.0 && self.exponent.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "h",
                reason: "must be non-negative",
            });
        }
        Ok(())
    }

    /// Mean of the excess delay `t_delay − T_{m,n}` for a given transform.
    pub fn mean_excess(&self, t: TransformOutput) -> f64 {
        let deficit = (1.0 - t.norm_sq()).clamp(0.0, 1.0);
        self.t_max * powf(deficit, self.exponent)
    }

    /// `t_delay = T_{m,n} − T_max (1 − |T|²)^h ln r`, `r` in `(0, 1)`.
    pub fn delay_time(&self, t: TransformOutput, time_of_flight: f64, r: f64) -> f64 {
        debug_assert!(r > 0.0 && r < 1.0);
        let scale = self.mean_excess(t);
        if scale == 0.0 {
            return time_of_flight;
        }
        time_of_flight - scale * ln(r)
    }

    /// Closed window: `|a − b| ≤ W`.
    #[inline]
    pub fn within_window(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.window
    }
}
