//! Source and detector placement.
//!
//! Source `S_m` sits at `(0, (1−2m)·d/2)`, detector `D_n` at `(X, y_n)`.
//! With `c = 1` the time of flight equals the path length.

use crate::math::{hypot_difference, sqrt};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Geometry {
    /// Distance `X` from the source axis to the detector line.
    pub screen_distance: f64,
    /// Source separation `d`.
    pub separation: f64,
    /// Detector positions `y_0`, `y_1` along the detector line.
    pub detector_y: [f64; 2],
}

impl Geometry {
    pub fn new(screen_distance: f64, separation: f64, detector_y: [f64; 2]) -> Result<Self, Error> {
        let g = Geometry {
            screen_distance,
            separation,
            detector_y,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.screen_distance > 0.0 && self.screen_distance.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "big-x",
                reason: "must be positive",
            });
        }
        if !(self.separation > 0.0 && self.separation.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "d",
                reason: "must be positive",
            });
        }
        if !self.detector_y.iter().all(|y| y.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "y",
                reason: "detector positions must be finite",
            });
        }
        Ok(())
    }

    /// Same screen and sources, with `D_1` moved to `y1`.
    #[must_use]
    pub fn with_y1(mut self, y1: f64) -> Self {
        self.detector_y[1] = y1;
        self
    }

    #[inline]
    fn source_y(&self, source: usize) -> f64 {
        if source == 0 {
            0.5 * self.separation
        } else {
            -0.5 * self.separation
        }
    }

    /// `T_{m,n}`.
    pub fn time_of_flight(&self, source: usize, detector: usize) -> f64 {
        let dy = self.source_y(source) - self.detector_y[detector];
        sqrt(self.screen_distance * self.screen_distance + dy * dy)
    }

    /// All four times of flight, indexed `[source][detector]`.
    pub fn times_of_flight(&self) -> [[f64; 2]; 2] {
        [
            [self.time_of_flight(0, 0), self.time_of_flight(0, 1)],
            [self.time_of_flight(1, 0), self.time_of_flight(1, 1)],
        ]
    }

    /// `T_{0,n} − T_{1,n}`, computed as a difference of hypotenuses without
    /// forming either one separately.
    pub fn path_difference(&self, detector: usize) -> f64 {
        let y = self.detector_y[detector];
        hypot_difference(self.screen_distance, self.source_y(0) - y, self.source_y(1) - y)
    }

    /// `ΔT = (T_{0,0} − T_{1,0}) − (T_{0,1} − T_{1,1})`.
    pub fn delta_t(&self) -> f64 {
        self.path_difference(0) - self.path_difference(1)
    }
}
