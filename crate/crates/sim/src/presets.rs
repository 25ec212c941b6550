//! Published parameter sets.

use std::fmt;
use std::str::FromStr;

use hbt_core::{DelayConfig, EfficiencyConfig, Geometry, RunConfig, Routing};

use crate::config::{Grid, ScanSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Classical two-source intensity interferometry.
    Fig4,
    /// Fig4 plus the click-delay model and a narrow coincidence window.
    Fig5,
    /// Fig5 with boson routing.
    Fig6,
    /// Single detector fed identical messages.
    Efficiency,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig4, Preset::Fig5, Preset::Fig6, Preset::Efficiency];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Efficiency => "efficiency",
        }
    }

    pub fn scan_spec(self) -> ScanSpec {
        let geometry = Geometry {
            screen_distance: 100_000.0,
            separation: 2000.0,
            detector_y: [0.0, 0.0],
        };
        let mut config = RunConfig {
            n_tot: 2_000_000,
            block_size: 50,
            gamma: 0.99,
            ports: 2,
            seed: 20_120_627,
            ..RunConfig::default()
        };
        let delay = DelayConfig {
            t_max: 1000.0,
            exponent: 8.0,
            window: 1.0,
        };
        match self {
            Preset::Fig4 => {}
            Preset::Fig5 => config.delay = Some(delay),
            Preset::Fig6 => {
                config.delay = Some(delay);
                config.routing = Routing::Boson;
            }
            Preset::Efficiency => config.n_tot = 100_000,
        }
        ScanSpec {
            preset: Some(self),
            geometry,
            config,
            grid: Grid::default(),
        }
    }

    pub fn efficiency_config(spec: &ScanSpec) -> EfficiencyConfig {
        EfficiencyConfig {
            gamma: spec.config.gamma,
            ports: spec.config.ports,
            seed: spec.config.seed,
            time_of_flight: spec.geometry.screen_distance,
            ..EfficiencyConfig::default()
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset `{s}` (expected fig4, fig5, fig6 or efficiency)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_parameters() {
        let s = Preset::Fig4.scan_spec();
        assert_eq!(s.config.n_tot, 2_000_000);
        assert_eq!(s.config.block_size, 50);
        assert_eq!(s.config.gamma, 0.99);
        assert_eq!(s.config.ports, 2);
        assert_eq!(s.geometry.screen_distance, 100_000.0);
        assert_eq!(s.geometry.separation, 2000.0);
        assert!(s.config.delay.is_none());

        let d = Preset::Fig5.scan_spec().config.delay.unwrap();
        assert_eq!((d.t_max, d.window, d.exponent), (1000.0, 1.0, 8.0));
        let s6 = Preset::Fig6.scan_spec();
        assert_eq!(s6.config.routing, Routing::Boson);
        assert_eq!(s6.config.delay, Some(d));
    }

    #[test]
    fn names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("fig7".parse::<Preset>().is_err());
    }
}
