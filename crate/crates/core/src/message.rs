//! Messengers and the clock-hand message they carry.

use crate::math::{fract, sin_cos, TAU};

/// A plain two-component real vector.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Unit vector at angle `angle` (radians).
    #[inline]
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = sin_cos(angle);
        Vec2 { x: c, y: s }
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl core::ops::Add for Vec2 {
    type Output = Vec2;

    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl core::ops::Neg for Vec2 {
    type Output = Vec2;

    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// The entire state of a messenger: an oscillator of frequency `frequency`
/// started with phase `phase_origin`, read out after `time_of_flight`.
///
/// The message vector is `(cos ψ, sin ψ)` with `ψ = 2π·f·t + δ`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Message {
    pub phase_origin: f64,
    pub frequency: f64,
    pub time_of_flight: f64,
}

impl Message {
    /// A freshly emitted messenger; its time of flight is zero until it
    /// arrives somewhere.
    ///
    /// `source` is informational only: the two sources are identical apart
    /// from their position, which enters through the time of flight.
    pub fn emit(source: usize, phase_origin: f64, frequency: f64) -> Self {
        debug_assert!(source < 2);
        Message {
            phase_origin,
            frequency,
            time_of_flight: 0.0,
        }
    }

    /// Stamp the time of flight on arrival.
    #[must_use]
    pub fn arrive(mut self, time_of_flight: f64) -> Self {
        debug_assert!(time_of_flight >= 0.0);
        self.time_of_flight = time_of_flight;
        self
    }

    /// Phase `ψ = 2π·f·t + δ`, with the `f·t` cycles reduced modulo one
    /// before scaling so that long flights keep full angular precision.
    pub fn phase(&self) -> f64 {
        TAU * fract(self.frequency * self.time_of_flight) + self.phase_origin
    }

    /// The clock-hand vector.
    pub fn vector(&self) -> Vec2 {
        Vec2::from_angle(self.phase())
    }
}
