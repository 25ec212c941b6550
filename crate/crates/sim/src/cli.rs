use std::path::PathBuf;
use std::time::{Instant, SystemTime};

use clap::{Args, Parser, Subcommand};
use hbt_core::{run_efficiency, Routing};
use thiserror::Error;

use crate::config::{parse_routing, ConfigError, Overrides, SpectralMode};
use crate::output::{write_efficiency_outputs, write_scan_outputs, WallClock};
use crate::presets::Preset;
use crate::scan::ScanOutcome;

#[derive(Debug, Parser)]
#[command(name = "hbt-sim", version, about = "Event-by-event two-source intensity interference simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a preset (optionally adjusted by a config file and flags) and
    /// write scan.csv, summary.json and manifest.json.
    Run(RunArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct RunArgs {
    /// fig4, fig5, fig6 or efficiency.
    #[arg(long, env = "HBT_PRESET", default_value = "fig4")]
    pub preset: Preset,
    /// Flat `key = value` file applied on top of the preset.
    #[arg(long, env = "HBT_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, env = "HBT_N_TOT")]
    pub n_tot: Option<u64>,
    #[arg(long, env = "HBT_N_F")]
    pub n_f: Option<u64>,
    #[arg(long, env = "HBT_GAMMA")]
    pub gamma: Option<f64>,
    #[arg(long, env = "HBT_BIG_X")]
    pub big_x: Option<f64>,
    #[arg(long, env = "HBT_D")]
    pub d: Option<f64>,
    #[arg(long, env = "HBT_Y1_MIN")]
    pub y1_min: Option<f64>,
    #[arg(long, env = "HBT_Y1_MAX")]
    pub y1_max: Option<f64>,
    #[arg(long, env = "HBT_Y1_STEPS")]
    pub y1_steps: Option<usize>,
    /// classical or boson.
    #[arg(long, env = "HBT_ROUTING", value_parser = parse_routing)]
    pub routing: Option<Routing>,
    /// Enable the click-delay model with windowed coincidences.
    #[arg(long, env = "HBT_DELAY", conflicts_with = "no_delay")]
    pub delay: bool,
    /// Disable the click-delay model even if the preset enables it.
    #[arg(long)]
    pub no_delay: bool,
    #[arg(long, env = "HBT_TMAX")]
    pub tmax: Option<f64>,
    #[arg(long, env = "HBT_WINDOW")]
    pub window: Option<f64>,
    #[arg(long, env = "HBT_H")]
    pub h: Option<f64>,
    /// mono or pdc.
    #[arg(long, env = "HBT_SPECTRAL")]
    pub spectral: Option<SpectralMode>,
    #[arg(long, env = "HBT_F0")]
    pub f0: Option<f64>,
    #[arg(long, env = "HBT_LINEWIDTH")]
    pub linewidth: Option<f64>,
    #[arg(long, env = "HBT_SEED")]
    pub seed: Option<u64>,
    /// Carry detector state over between scan points (runs sequentially).
    #[arg(long)]
    pub no_reinit: bool,
    /// Worker threads; defaults to all cores.
    #[arg(long, env = "HBT_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, env = "HBT_OUT", default_value = "out")]
    pub out: PathBuf,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            n_tot: self.n_tot,
            n_f: self.n_f,
            gamma: self.gamma,
            big_x: self.big_x,
            d: self.d,
            y1_min: self.y1_min,
            y1_max: self.y1_max,
            y1_steps: self.y1_steps,
            routing: self.routing,
            delay: match (self.delay, self.no_delay) {
                (true, _) => Some(true),
                (_, true) => Some(false),
                _ => None,
            },
            tmax: self.tmax,
            window: self.window,
            h: self.h,
            spectral: self.spectral,
            f0: self.f0,
            linewidth: self.linewidth,
            seed: self.seed,
            reinitialize: self.no_reinit.then_some(false),
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("writing outputs: {0}")]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(e) => e.exit_code(),
            RunError::Io(_) | RunError::Pool(_) => 1,
        }
    }
}

impl From<hbt_core::Error> for RunError {
    fn from(e: hbt_core::Error) -> Self {
        RunError::Config(ConfigError::Invalid(e))
    }
}

pub fn run(args: &RunArgs) -> Result<(), RunError> {
    let mut spec = args.preset.scan_spec();
    if let Some(path) = &args.config {
        Overrides::from_path(path)?.apply(&mut spec);
    }
    args.overrides().apply(&mut spec);
    spec.validate()?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;

    let started = SystemTime::now();
    let timer = Instant::now();
    if args.preset == Preset::Efficiency {
        let cfg = Preset::efficiency_config(&spec);
        let eff = run_efficiency(&cfg, spec.config.n_tot)?;
        write_efficiency_outputs(&args.out, &spec, eff, WallClock::new(started, timer.elapsed()))?;
        println!(
            "efficiency: {} / {} = {:.6}",
            eff.clicks,
            eff.messages,
            eff.fraction()
        );
        return Ok(());
    }

    let outcome = pool.install(|| ScanOutcome::run(&spec))?;
    write_scan_outputs(&args.out, &outcome, WallClock::new(started, timer.elapsed()))?;

    let s = &outcome.summary;
    if let Some(f) = &s.coincidence {
        println!(
            "coincidences: a = {:.4} ± {:.4}, b = {:.4} ± {:.4}",
            f.offset, f.offset_se, f.contrast, f.contrast_se
        );
    }
    for single in &s.singles {
        println!("singles D{}: a2 = {:.4}", single.detector, single.offset);
    }
    if let Some(v) = s.visibility_raw {
        println!("raw visibility: {v:.4}");
    }
    println!("wrote {}", args.out.display());
    Ok(())
}
