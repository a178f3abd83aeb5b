//! JSON scenario configuration.
//!
//! Units in the file are millimetres, gigahertz and degrees; conversion to
//! SI happens when the core types are built. Complex numbers are written
//! as `[re, im]`.

use std::path::{Path, PathBuf};

use illusion_core::synthesis::SynthesisMode;
use illusion_core::wavecore::{Layer, Medium, Stack, Termination, WaveError};
use illusion_core::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Sweeps stop here; the model is not meant for near-grazing incidence.
pub const MAX_THETA_DEG: f64 = 80.0;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config {path} is not valid: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("{what}: {source}")]
    Physics {
        what: String,
        #[source]
        source: WaveError,
    },
}

type Pair = [f64; 2];

fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn unit() -> Pair {
    [1.0, 0.0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumSpec {
    pub eps_r: Pair,
    #[serde(default = "unit")]
    pub mu_r: Pair,
}

impl MediumSpec {
    pub fn air() -> Self {
        Self {
            eps_r: unit(),
            mu_r: unit(),
        }
    }

    fn build(&self, what: &str) -> Result<Medium, ConfigError> {
        Medium::with_permeability(complex(self.eps_r), complex(self.mu_r)).map_err(|source| {
            ConfigError::Physics {
                what: what.to_string(),
                source,
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerSpec {
    pub eps_r: Pair,
    #[serde(default = "unit")]
    pub mu_r: Pair,
    pub thickness_mm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TerminationSpec {
    Pec,
    Open {
        #[serde(default = "unit")]
        eps_r: Pair,
        #[serde(default = "unit")]
        mu_r: Pair,
    },
    Sheet {
        rho: Pair,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackSpec {
    #[serde(default = "MediumSpec::air")]
    pub incident: MediumSpec,
    pub layers: Vec<LayerSpec>,
    pub termination: TerminationSpec,
}

impl StackSpec {
    pub fn build(&self, name: &str) -> Result<Stack, ConfigError> {
        let incident = self.incident.build(&format!("{name}.incident"))?;
        let layers = self
            .layers
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let what = format!("{name}.layers[{i}]");
                let medium = MediumSpec {
                    eps_r: l.eps_r,
                    mu_r: l.mu_r,
                }
                .build(&what)?;
                Layer::new(medium, l.thickness_mm * 1e-3)
                    .map_err(|source| ConfigError::Physics { what, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let termination = match &self.termination {
            TerminationSpec::Pec => Termination::Pec,
            TerminationSpec::Open { eps_r, mu_r } => Termination::Open(
                MediumSpec {
                    eps_r: *eps_r,
                    mu_r: *mu_r,
                }
                .build(&format!("{name}.termination"))?,
            ),
            TerminationSpec::Sheet { rho } => Termination::Sheet(complex(*rho)),
        };
        Stack::new(incident, layers, termination).map_err(|source| ConfigError::Physics {
            what: name.to_string(),
            source,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ModeSpec {
    #[default]
    Reflective,
    Transmissive,
}

impl From<ModeSpec> for SynthesisMode {
    fn from(m: ModeSpec) -> Self {
        match m {
            ModeSpec::Reflective => SynthesisMode::Reflective,
            ModeSpec::Transmissive => SynthesisMode::Transmissive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl RangeSpec {
    pub fn single(value: f64) -> Self {
        Self {
            start: value,
            stop: value,
            step: 1.0,
        }
    }

    fn validate(&self, name: &str) -> Result<(), ConfigError> {
        if ![self.start, self.stop, self.step]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(ConfigError::Invalid(format!(
                "{name}: values must be finite"
            )));
        }
        if self.step <= 0.0 {
            return Err(ConfigError::Invalid(format!(
                "{name}.step must be > 0 (got {})",
                self.step
            )));
        }
        if self.start > self.stop {
            return Err(ConfigError::Invalid(format!(
                "{name}.start ({}) must not exceed {name}.stop ({})",
                self.start, self.stop
            )));
        }
        Ok(())
    }

    /// Grid values `start + i·step` up to and including `stop`.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| ((self.start + i as f64 * self.step) * 1e9).round() / 1e9)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default = "default_theta")]
    pub theta_deg: RangeSpec,
    #[serde(default = "default_freq")]
    pub freq_ghz: RangeSpec,
}

fn default_theta() -> RangeSpec {
    RangeSpec {
        start: 0.0,
        stop: 80.0,
        step: 0.5,
    }
}

fn default_freq() -> RangeSpec {
    RangeSpec {
        start: 10.0,
        stop: 12.0,
        step: 0.1,
    }
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            theta_deg: default_theta(),
            freq_ghz: default_freq(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub actual: StackSpec,
    pub target: StackSpec,
    #[serde(default)]
    pub mode: ModeSpec,
    #[serde(default)]
    pub sweep: SweepSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

impl ScenarioConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let config: Self = serde_json::from_str(text).map_err(|source| ConfigError::Parse {
            path: origin.to_string(),
            source,
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = read(path)?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let theta = &self.sweep.theta_deg;
        theta.validate("sweep.theta_deg")?;
        if theta.start < 0.0 {
            return Err(ConfigError::Invalid(format!(
                "sweep.theta_deg.start must be ≥ 0 (got {})",
                theta.start
            )));
        }
        if theta.stop > MAX_THETA_DEG {
            return Err(ConfigError::Invalid(format!(
                "sweep.theta_deg.stop must be ≤ {MAX_THETA_DEG}° (got {}); \
                 near-grazing incidence is not supported",
                theta.stop
            )));
        }
        let freq = &self.sweep.freq_ghz;
        freq.validate("sweep.freq_ghz")?;
        if freq.start <= 0.0 {
            return Err(ConfigError::Invalid(format!(
                "sweep.freq_ghz.start must be > 0 (got {})",
                freq.start
            )));
        }
        self.actual.build("actual")?;
        self.target.build("target")?;
        Ok(())
    }

    pub fn stacks(&self) -> Result<(Stack, Stack), ConfigError> {
        Ok((self.actual.build("actual")?, self.target.build("target")?))
    }
}

pub(crate) fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn air_layer(thickness_mm: f64) -> LayerSpec {
    LayerSpec {
        eps_r: unit(),
        mu_r: unit(),
        thickness_mm,
    }
}

/// FR4 slab in a PEC-backed air cavity, made to look like a thicker Teflon
/// slab standing in open air.
pub fn builtin_scenario() -> ScenarioConfig {
    ScenarioConfig {
        actual: StackSpec {
            incident: MediumSpec::air(),
            layers: vec![
                air_layer(120.0),
                LayerSpec {
                    eps_r: [3.9, -0.08],
                    mu_r: unit(),
                    thickness_mm: 60.0,
                },
                air_layer(120.0),
            ],
            termination: TerminationSpec::Pec,
        },
        target: StackSpec {
            incident: MediumSpec::air(),
            layers: vec![
                air_layer(60.0),
                LayerSpec {
                    eps_r: [2.1, -0.0006],
                    mu_r: unit(),
                    thickness_mm: 120.0,
                },
                air_layer(120.0),
            ],
            termination: TerminationSpec::Open {
                eps_r: unit(),
                mu_r: unit(),
            },
        },
        mode: ModeSpec::Reflective,
        sweep: SweepSpec::default(),
        output: OutputSpec::default(),
    }
}
