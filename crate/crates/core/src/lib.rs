//! Event-by-event simulation of second-order intensity interference.
//!
//! Two independent point sources emit one messenger each per event. A
//! messenger carries nothing but a clock hand: a two-component unit vector
//! whose angle advances with the time of flight. Each detector is an
//! adaptive processing unit (a deterministic learning machine followed by a
//! transformation and a thresholding stage) that sees one message at a time
//! and never communicates with the other detector. Interference in the
//! coincidence counts emerges from the detectors' internal state alone.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the CLI and the
//! parallel scan driver live in the `hbt-sim` crate.
//!
//! Units are natural: the propagation speed and the base frequency are both
//! one, so lengths are in units of `c/f` and times in units of `1/f`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod delay;
pub mod detector;
mod error;
pub mod experiment;
pub mod geometry;
mod math;
pub mod message;
pub mod oracle;
pub mod rng;

pub use analysis::{fit_fringe, fit_singles, visibility_from_counts, FitResult};
pub use delay::DelayConfig;
pub use detector::{DetectorState, TransformOutput};
pub use error::Error;
pub use experiment::{
    run_efficiency, run_point, run_scan, Efficiency, EfficiencyConfig, PairEvent, RunConfig,
    Routing, ScanPoint, Simulation, Spectrum,
};
pub use geometry::Geometry;
pub use message::{Message, Vec2};
pub use oracle::{visibility, CorrelationMode, WaveOracle};
