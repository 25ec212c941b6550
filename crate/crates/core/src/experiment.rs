//! The two-source, two-detector experiment: pair generation, routing,
//! coincidence counting and scans over the position of `D_1`.

use alloc::vec::Vec;

use rand::distr::Open01;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::delay::DelayConfig;
use crate::detector::DetectorState;
use crate::geometry::Geometry;
use crate::math::{tan, PI, TAU};
use crate::message::Message;
use crate::rng::{self, PointStreams, Stream};
use crate::Error;

/// How the two messengers of a pair choose their detectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Routing {
    /// Each messenger picks a detector with a fair coin, independently.
    Classical,
    /// The two messengers always go to different detectors; a fair coin
    /// picks which source feeds which detector.
    Boson,
}

/// Frequency content of the sources.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Spectrum {
    Monochromatic { frequency: f64 },
    /// Pairs with `f1 + f2 = pump`; `f1` is Lorentzian about `pump/2` with
    /// half-width `linewidth`, truncated to `(0, pump)`.
    DownConversion { pump: f64, linewidth: f64 },
}

impl Default for Spectrum {
    fn default() -> Self {
        Spectrum::Monochromatic { frequency: 1.0 }
    }
}

impl Spectrum {
    /// Down-conversion with the default half-width `pump/20`.
    pub fn down_conversion(pump: f64) -> Self {
        Spectrum::DownConversion {
            pump,
            linewidth: pump / 20.0,
        }
    }

    /// The frequency that sets the coincidence fringe: `f`, or `f0/2` for
    /// down-converted pairs.
    pub fn fringe_frequency(&self) -> f64 {
        match *self {
            Spectrum::Monochromatic { frequency } => frequency,
            Spectrum::DownConversion { pump, .. } => 0.5 * pump,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        match *self {
            Spectrum::Monochromatic { frequency } if !(frequency > 0.0 && frequency.is_finite()) => {
                Err(Error::InvalidParameter {
                    name: "frequency",
                    reason: "must be positive",
                })
            }
            Spectrum::DownConversion { pump, .. } if !(pump > 0.0 && pump.is_finite()) => {
                Err(Error::InvalidParameter {
                    name: "f0",
                    reason: "must be positive",
                })
            }
            Spectrum::DownConversion { linewidth, .. } if !(linewidth >= 0.0 && linewidth.is_finite()) => {
                Err(Error::InvalidParameter {
                    name: "linewidth",
                    reason: "must be non-negative",
                })
            }
            _ => Ok(()),
        }
    }
}

/// Draw the two frequencies of a down-converted pair.
///
/// A zero linewidth returns `(f0/2, f0/2)` without consuming randomness.
pub fn draw_pair_frequencies<R: Rng + ?Sized>(pump: f64, linewidth: f64, rng: &mut R) -> (f64, f64) {
    let centre = 0.5 * pump;
    if linewidth == 0.0 {
        return (centre, centre);
    }
    loop {
        let u: f64 = rng.sample(Open01);
        let f1 = centre + linewidth * tan(PI * (u - 0.5));
        if f1 > 0.0 && f1 < pump {
            return (f1, pump - f1);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunConfig {
    /// Pairs per scan point, `N_tot`.
    pub n_tot: u64,
    /// Pairs sharing one draw of the source phases, `N_F`.
    pub block_size: u64,
    /// DLM memory parameter.
    pub gamma: f64,
    /// Detector input ports, `K`.
    pub ports: usize,
    pub routing: Routing,
    /// Click-delay model; `None` counts logical coincidences.
    pub delay: Option<DelayConfig>,
    pub spectrum: Spectrum,
    pub seed: u64,
    /// Start every scan point with freshly initialized detectors. When
    /// false the detectors carry over from one point to the next and the
    /// scan must run sequentially.
    pub reinitialize: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_tot: 2_000_000,
            block_size: 50,
            gamma: 0.99,
            ports: 2,
            routing: Routing::Classical,
            delay: None,
            spectrum: Spectrum::default(),
            seed: 0,
            reinitialize: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.n_tot == 0 {
            return Err(Error::InvalidParameter {
                name: "n-tot",
                reason: "must be positive",
            });
        }
        if self.block_size == 0 {
            return Err(Error::InvalidParameter {
                name: "n-f",
                reason: "must be at least one",
            });
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                reason: "must lie in [0, 1)",
            });
        }
        if self.ports < 2 {
            return Err(Error::InvalidParameter {
                name: "ports",
                reason: "need one port per source",
            });
        }
        if let Some(d) = &self.delay {
            d.validate()?;
        }
        self.spectrum.validate()
    }
}

/// One messenger's journey within a pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arrival {
    pub source: usize,
    pub detector: usize,
    pub port: usize,
    pub time_of_flight: f64,
    pub click: bool,
    /// Click time, when the delay model is on and the detector clicked.
    pub delay: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairEvent {
    pub index: u64,
    /// Indexed by source.
    pub arrivals: [Arrival; 2],
    pub coincidence: bool,
}

impl PairEvent {
    pub fn clicked(&self, detector: usize) -> bool {
        self.arrivals
            .iter()
            .any(|a| a.detector == detector && a.click)
    }

    /// Click delay of `detector`, if it clicked exactly once with the delay
    /// model on.
    pub fn delay(&self, detector: usize) -> Option<f64> {
        let mut found = None;
        for a in self.arrivals.iter().filter(|a| a.detector == detector && a.click) {
            if found.is_some() {
                return None;
            }
            found = a.delay;
        }
        found
    }

    pub fn same_detector(&self) -> bool {
        self.arrivals[0].detector == self.arrivals[1].detector
    }

    /// Both detectors clicked.
    pub fn coincide_logical(&self) -> bool {
        self.clicked(0) && self.clicked(1)
    }

    /// Both detectors clicked and their click times differ by at most `W`.
    pub fn coincide_windowed(&self, delay: &DelayConfig) -> bool {
        match (self.delay(0), self.delay(1)) {
            (Some(a), Some(b)) => self.coincide_logical() && delay.within_window(a, b),
            _ => false,
        }
    }
}

/// Aggregates for one position of `D_1`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanPoint {
    pub y1: f64,
    /// `ΔT` at this position.
    pub delta_t: f64,
    pub n_tot: u64,
    pub n_count: [u64; 2],
    pub n_coincidence: u64,
}

impl ScanPoint {
    fn empty(geometry: &Geometry) -> Self {
        ScanPoint {
            y1: geometry.detector_y[1],
            delta_t: geometry.delta_t(),
            n_tot: 0,
            n_count: [0; 2],
            n_coincidence: 0,
        }
    }

    pub fn record(&mut self, event: &PairEvent) {
        self.n_tot += 1;
        for a in event.arrivals.iter().filter(|a| a.click) {
            self.n_count[a.detector] += 1;
        }
        if event.coincidence {
            self.n_coincidence += 1;
        }
    }
}

/// Two detectors plus the random streams that drive them; one instance per
/// scan point, owned by a single worker.
#[derive(Clone, Debug)]
pub struct Simulation {
    config: RunConfig,
    detectors: [DetectorState; 2],
    tof: [[f64; 2]; 2],
    streams: PointStreams,
    phases: [f64; 2],
    next_index: u64,
}

impl Simulation {
    /// Fresh detectors and streams for scan point `point` at `geometry`.
    pub fn new(geometry: &Geometry, config: &RunConfig, point: u64) -> Result<Self, Error> {
        config.validate()?;
        geometry.validate()?;
        let mut init = rng::stream(config.seed, point, Stream::Init);
        let detectors = [
            DetectorState::initialize(config.ports, config.gamma, &mut init)?,
            DetectorState::initialize(config.ports, config.gamma, &mut init)?,
        ];
        Ok(Simulation {
            config: *config,
            detectors,
            tof: geometry.times_of_flight(),
            streams: PointStreams::new(config.seed, point),
            phases: [0.0; 2],
            next_index: 0,
        })
    }

    /// Keep the detectors, move to a new geometry and point streams.
    pub fn retarget(&mut self, geometry: &Geometry, point: u64) {
        self.tof = geometry.times_of_flight();
        self.streams = PointStreams::new(self.config.seed, point);
        self.next_index = 0;
    }

    pub fn detectors(&self) -> &[DetectorState; 2] {
        &self.detectors
    }

    fn destinations(&mut self) -> [usize; 2] {
        let routing = &mut self.streams.routing;
        match self.config.routing {
            Routing::Classical => [
                usize::from(routing.random_bool(0.5)),
                usize::from(routing.random_bool(0.5)),
            ],
            Routing::Boson => {
                if routing.random_bool(0.5) {
                    [1, 0]
                } else {
                    [0, 1]
                }
            }
        }
    }

    fn frequencies(&mut self) -> [f64; 2] {
        match self.config.spectrum {
            Spectrum::Monochromatic { frequency } => [frequency; 2],
            Spectrum::DownConversion { pump, linewidth } => {
                let (f1, f2) = draw_pair_frequencies(pump, linewidth, &mut self.streams.spectrum);
                [f1, f2]
            }
        }
    }

    /// Process one pair with the given source phases.
    pub fn run_pair(&mut self, phases: [f64; 2]) -> PairEvent {
        let destinations = self.destinations();
        let frequencies = self.frequencies();
        let delay_model = self.config.delay;

        let mut arrivals = [Arrival {
            source: 0,
            detector: 0,
            port: 0,
            time_of_flight: 0.0,
            click: false,
            delay: None,
        }; 2];
        for (source, arrival) in arrivals.iter_mut().enumerate() {
            let detector = destinations[source];
            let port = source;
            let time_of_flight = self.tof[source][detector];
            let message = Message::emit(source, phases[source], frequencies[source]).arrive(time_of_flight);
            let r: f64 = self.streams.thresholds.random();
            let (click, transform) = self.detectors[detector]
                .detect(port, &message, r)
                .expect("ports validated against the number of sources");
            let delay = match (&delay_model, click) {
                (Some(model), true) => {
                    let r: f64 = self.streams.delays.sample(Open01);
                    Some(model.delay_time(transform, time_of_flight, r))
                }
                _ => None,
            };
            *arrival = Arrival {
                source,
                detector,
                port,
                time_of_flight,
                click,
                delay,
            };
        }

        let mut event = PairEvent {
            index: self.next_index,
            arrivals,
            coincidence: false,
        };
        event.coincidence = match &delay_model {
            Some(model) => event.coincide_windowed(model),
            None => event.coincide_logical(),
        };
        self.next_index += 1;
        event
    }

    /// Next pair, redrawing both source phases at every block boundary.
    pub fn step(&mut self) -> PairEvent {
        if self.next_index.is_multiple_of(self.config.block_size) {
            let phases = &mut self.streams.phases;
            self.phases = [TAU * phases.random::<f64>(), TAU * phases.random::<f64>()];
        }
        self.run_pair(self.phases)
    }

    /// Run `n_tot` pairs and aggregate them.
    pub fn run(&mut self, geometry: &Geometry) -> ScanPoint {
        let mut point = ScanPoint::empty(geometry);
        for _ in 0..self.config.n_tot {
            let event = self.step();
            point.record(&event);
        }
        point
    }
}

/// One scan point with freshly initialized detectors. `point` selects the
/// random substreams, so results do not depend on evaluation order.
pub fn run_point(geometry: &Geometry, config: &RunConfig, y1: f64, point: u64) -> Result<ScanPoint, Error> {
    let g = geometry.with_y1(y1);
    let mut sim = Simulation::new(&g, config, point)?;
    Ok(sim.run(&g))
}

/// Scan `D_1` over `y1_values`, in order.
pub fn run_scan(geometry: &Geometry, config: &RunConfig, y1_values: &[f64]) -> Result<Vec<ScanPoint>, Error> {
    config.validate()?;
    geometry.validate()?;
    if config.reinitialize {
        return y1_values
            .iter()
            .enumerate()
            .map(|(i, &y1)| run_point(geometry, config, y1, i as u64))
            .collect();
    }
    let mut out = Vec::with_capacity(y1_values.len());
    let mut sim: Option<Simulation> = None;
    for (i, &y1) in y1_values.iter().enumerate() {
        let g = geometry.with_y1(y1);
        let sim = match sim.as_mut() {
            Some(s) => {
                s.retarget(&g, i as u64);
                s
            }
            None => sim.insert(Simulation::new(&g, config, i as u64)?),
        };
        out.push(sim.run(&g));
    }
    Ok(out)
}

/// Single-detector efficiency measurement: a far-away source sending
/// identical messages into one port.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EfficiencyConfig {
    pub gamma: f64,
    pub ports: usize,
    /// Port every messenger arrives at.
    pub port: usize,
    pub time_of_flight: f64,
    pub frequency: f64,
    pub phase: f64,
    pub seed: u64,
}

impl Default for EfficiencyConfig {
    fn default() -> Self {
        EfficiencyConfig {
            gamma: 0.99,
            ports: 2,
            port: 1,
            time_of_flight: 100_000.0,
            frequency: 1.0,
            phase: 0.0,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Efficiency {
    pub messages: u64,
    pub clicks: u64,
}

impl Efficiency {
    pub fn fraction(&self) -> f64 {
        if self.messages == 0 {
            0.0
        } else {
            self.clicks as f64 / self.messages as f64
        }
    }
}

pub fn run_efficiency(config: &EfficiencyConfig, n_messages: u64) -> Result<Efficiency, Error> {
    let message = Message::emit(0, config.phase, config.frequency).arrive(config.time_of_flight);
    run_efficiency_with(config, (0..n_messages).map(|_| (config.port, message)))
}

/// Efficiency for an arbitrary arrival sequence of `(port, message)`.
pub fn run_efficiency_with<I>(config: &EfficiencyConfig, arrivals: I) -> Result<Efficiency, Error>
where
    I: IntoIterator<Item = (usize, Message)>,
{
    let mut init = rng::stream(config.seed, 0, Stream::Init);
    let mut thresholds: ChaCha8Rng = rng::stream(config.seed, 0, Stream::Thresholds);
    let mut detector = DetectorState::initialize(config.ports, config.gamma, &mut init)?;
    let mut out = Efficiency {
        messages: 0,
        clicks: 0,
    };
    for (port, message) in arrivals {
        let (click, _) = detector.detect(port, &message, thresholds.random())?;
        out.messages += 1;
        out.clicks += u64::from(click);
    }
    Ok(out)
}
