//! Unit-cell and companion-model subcommands. Each takes a small JSON
//! config (or a builtin preset) and produces a CSV table.

use std::path::{Path, PathBuf};

use illusion_core::companions::{
    grating_angle, pb_phase, radial_forward, radial_inverse, strip_height, CompanionError,
    Handedness, RadialTransform, StripProfile,
};
use illusion_core::unitcell::{
    build_coding_set, select_state, DistanceMetric, ReflectionMap, UnitCellError,
    DEFAULT_MIN_AMPLITUDE,
};
use illusion_core::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{read, ConfigError};
use crate::emit::{number, CsvTable};

#[derive(Debug, Error)]
pub enum TableError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    UnitCell(#[from] UnitCellError),
    #[error(transparent)]
    Companion(#[from] CompanionError),
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, ConfigError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|source| ConfigError::Parse {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MetricSpec {
    #[default]
    Complex,
    Phase,
}

impl From<MetricSpec> for DistanceMetric {
    fn from(m: MetricSpec) -> Self {
        match m {
            MetricSpec::Complex => DistanceMetric::Complex,
            MetricSpec::Phase => DistanceMetric::Phase,
        }
    }
}

/// Reflection map on disk, or the shipped sample when `map` is absent.
/// Relative paths are resolved against the config file's directory.
fn load_map(map: &Option<PathBuf>, base: Option<&Path>) -> Result<ReflectionMap, UnitCellError> {
    match map {
        None => Ok(ReflectionMap::sample()),
        Some(p) if p.is_relative() => match base {
            Some(dir) => ReflectionMap::load(dir.join(p)),
            None => ReflectionMap::load(p),
        },
        Some(p) => ReflectionMap::load(p),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectCellConfig {
    #[serde(default)]
    pub map: Option<PathBuf>,
    pub freq_ghz: f64,
    pub amplitude: f64,
    pub phase_deg: f64,
    #[serde(default)]
    pub metric: MetricSpec,
}

impl SelectCellConfig {
    pub fn builtin() -> Self {
        Self {
            map: None,
            freq_ghz: 4.5,
            amplitude: 0.5,
            phase_deg: 64.0,
            metric: MetricSpec::Complex,
        }
    }
}

pub fn select_cell(cfg: &SelectCellConfig, base: Option<&Path>) -> Result<CsvTable, TableError> {
    let map = load_map(&cfg.map, base)?;
    let target = Complex64::from_polar(cfg.amplitude, cfg.phase_deg.to_radians());
    let rec = select_state(&map, cfg.freq_ghz * 1e9, target, cfg.metric.into())?;
    let mut t = CsvTable::new(&[
        "freq_ghz",
        "r_ohm",
        "c_pf",
        "rho_re",
        "rho_im",
        "amplitude",
        "phase_deg",
        "distance",
    ]);
    t.rows.push(vec![
        number(rec.frequency_ghz()),
        number(rec.resistance),
        number(rec.capacitance_pf()),
        number(rec.rho.re),
        number(rec.rho.im),
        number(rec.amplitude()),
        number(rec.phase().to_degrees()),
        number((rec.rho - target).norm()),
    ]);
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodingSetConfig {
    #[serde(default)]
    pub map: Option<PathBuf>,
    pub freq_ghz: f64,
    pub n_bit: u32,
    #[serde(default = "default_min_amplitude")]
    pub min_amplitude: f64,
}

fn default_min_amplitude() -> f64 {
    DEFAULT_MIN_AMPLITUDE
}

impl CodingSetConfig {
    pub fn builtin() -> Self {
        Self {
            map: None,
            freq_ghz: 4.5,
            n_bit: 2,
            min_amplitude: DEFAULT_MIN_AMPLITUDE,
        }
    }
}

pub fn coding_set(cfg: &CodingSetConfig, base: Option<&Path>) -> Result<CsvTable, TableError> {
    let map = load_map(&cfg.map, base)?;
    let set = build_coding_set(&map, cfg.freq_ghz * 1e9, cfg.n_bit, cfg.min_amplitude)?;
    let mut t = CsvTable::new(&[
        "slot",
        "target_phase_deg",
        "r_ohm",
        "c_pf",
        "amplitude",
        "phase_deg",
        "phase_err_deg",
    ]);
    for (k, ((s, target), err)) in set
        .states
        .iter()
        .zip(&set.target_phases)
        .zip(set.phase_errors())
        .enumerate()
    {
        t.rows.push(vec![
            k.to_string(),
            number(target.sin().atan2(target.cos()).to_degrees()),
            number(s.resistance),
            number(s.capacitance_pf()),
            number(s.amplitude()),
            number(s.phase().to_degrees()),
            number(err.to_degrees()),
        ]);
    }
    Ok(t)
}

fn default_samples() -> usize {
    101
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialConfig {
    pub r1_mm: f64,
    pub r2_mm: f64,
    pub q: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl RadialConfig {
    pub fn builtin() -> Self {
        Self {
            r1_mm: 100.0,
            r2_mm: 300.0,
            q: 2.0,
            samples: default_samples(),
        }
    }
}

/// `r`, `r' = f(r)` and `f⁻¹(r)` on a uniform grid over `[0, R2]`.
pub fn radial_table(cfg: &RadialConfig) -> Result<CsvTable, TableError> {
    let t = RadialTransform::new(cfg.r1_mm * 1e-3, cfg.r2_mm * 1e-3, cfg.q)?;
    let n = cfg.samples.max(2);
    let mut table = CsvTable::new(&["r_mm", "r_prime_mm", "r_inverse_mm"]);
    for i in 0..n {
        let r = (t.r2() * i as f64 / (n - 1) as f64).min(t.r2());
        table.rows.push(vec![
            number(r * 1e3),
            number(radial_forward(&t, r)? * 1e3),
            number(radial_inverse(&t, r)? * 1e3),
        ]);
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PbPhaseConfig {
    pub amplitude: f64,
    pub period_mm: f64,
    /// +1 for left-handed, −1 for right-handed illumination.
    pub sigma: i32,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl PbPhaseConfig {
    pub fn builtin() -> Self {
        Self {
            amplitude: 1.0,
            period_mm: 10.0,
            sigma: 1,
            samples: default_samples(),
        }
    }
}

/// Strip height and geometric phase over one period.
pub fn pb_phase_table(cfg: &PbPhaseConfig) -> Result<CsvTable, TableError> {
    let handedness = Handedness::from_sign(cfg.sigma).ok_or(CompanionError::InvalidStripProfile)?;
    let p = StripProfile::new(cfg.amplitude, cfg.period_mm * 1e-3, handedness)?;
    let n = cfg.samples.max(2);
    let mut table = CsvTable::new(&["x_mm", "y_mm", "phase_deg"]);
    for i in 0..n {
        let x = p.period * i as f64 / (n - 1) as f64;
        table.rows.push(vec![
            number(x * 1e3),
            number(strip_height(&p, x) * 1e3),
            number(pb_phase(&p, x).to_degrees()),
        ]);
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GratingConfig {
    pub wavelength_mm: f64,
    pub period_mm: f64,
    #[serde(default = "default_max_order")]
    pub max_order: i32,
}

fn default_max_order() -> i32 {
    3
}

impl GratingConfig {
    pub fn builtin() -> Self {
        Self {
            wavelength_mm: 30.0,
            period_mm: 60.0,
            max_order: default_max_order(),
        }
    }
}

/// Angles of orders `−max..=max`; evanescent orders get NaN and a marker.
pub fn grating_table(cfg: &GratingConfig) -> Result<CsvTable, TableError> {
    let mut table = CsvTable::new(&["order", "angle_deg", "err"]);
    for m in -cfg.max_order.abs()..=cfg.max_order.abs() {
        match grating_angle(m, cfg.wavelength_mm, cfg.period_mm) {
            Ok(a) => table
                .rows
                .push(vec![m.to_string(), number(a.to_degrees()), String::new()]),
            Err(CompanionError::EvanescentOrder { .. }) => {
                table
                    .rows
                    .push(vec![m.to_string(), number(f64::NAN), "evanescent".into()])
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(table)
}
