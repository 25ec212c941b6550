//! The adaptive detector: a deterministic learning machine (DLM) input
//! stage, a transformation stage and a thresholding output stage.
//!
//! Ports are zero-based here; port `k` is the `k+1`-th input channel.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::math::TAU;
use crate::message::{Message, Vec2};
use crate::Error;

/// Output of the transformation stage, `T = Σ_k x_k Y_k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformOutput(pub Vec2);

impl TransformOutput {
    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.0.norm_sq()
    }

    /// Output stage: click iff `|T|² ≥ r` for a uniform `r` in `[0, 1)`.
    #[inline]
    pub fn threshold(self, r: f64) -> bool {
        self.norm_sq() >= r
    }
}

/// Internal state of one detector.
#[derive(Clone, Debug, PartialEq)]
pub struct DetectorState {
    weights: Vec<f64>,
    registers: Vec<Vec2>,
    gamma: f64,
}

impl DetectorState {
    /// The starting configuration: `x = (1, 0, …, 0)` and every register
    /// holding a clock hand at a uniformly random angle.
    pub fn initialize<R: Rng + ?Sized>(ports: usize, gamma: f64, rng: &mut R) -> Result<Self, Error> {
        let registers = (0..ports)
            .map(|_| Vec2::from_angle(TAU * rng.random::<f64>()))
            .collect();
        Self::with_registers(gamma, registers)
    }

    /// Build a state with `x = (1, 0, …, 0)` and the given registers.
    pub fn with_registers(gamma: f64, registers: Vec<Vec2>) -> Result<Self, Error> {
        let ports = registers.len();
        let mut weights = vec![0.0; ports];
        if let Some(first) = weights.first_mut() {
            *first = 1.0;
        }
        Self::from_parts(gamma, weights, registers)
    }

    /// Build a state from explicit parts. `weights` must lie on the simplex.
    pub fn from_parts(gamma: f64, weights: Vec<f64>, registers: Vec<Vec2>) -> Result<Self, Error> {
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                reason: "must lie in [0, 1)",
            });
        }
        if registers.is_empty() || weights.len() != registers.len() {
            return Err(Error::InvalidParameter {
                name: "ports",
                reason: "need at least one port and one weight per register",
            });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 || weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: "must be non-negative and sum to one",
            });
        }
        Ok(DetectorState {
            weights,
            registers,
            gamma,
        })
    }

    pub fn ports(&self) -> usize {
        self.registers.len()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn registers(&self) -> &[Vec2] {
        &self.registers
    }

    /// Input stage: `x ← γx + (1−γ)v` with `v` one-hot at `port`, then the
    /// message overwrites register `port`. Other registers are untouched.
    pub fn update(&mut self, port: usize, message: Vec2) -> Result<(), Error> {
        let ports = self.ports();
        if port >= ports {
            return Err(Error::PortOutOfRange { port, ports });
        }
        let gamma = self.gamma;
        for (i, w) in self.weights.iter_mut().enumerate() {
            *w *= gamma;
            if i == port {
                *w += 1.0 - gamma;
            }
        }
        self.registers[port] = message;
        Ok(())
    }

    /// Transformation stage.
    pub fn transform(&self) -> TransformOutput {
        let t = self
            .weights
            .iter()
            .zip(&self.registers)
            .fold(Vec2::ZERO, |acc, (&w, &y)| acc + y.scale(w));
        TransformOutput(t)
    }

    /// One full detection step. The arriving message is absorbed before the
    /// transformation, so it takes part in deciding its own click.
    pub fn detect(&mut self, port: usize, message: &Message, r: f64) -> Result<(bool, TransformOutput), Error> {
        self.update(port, message.vector())?;
        let t = self.transform();
        Ok((t.threshold(r), t))
    }
}
