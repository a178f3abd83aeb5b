//! Angle/frequency sweeps over a scenario.

use illusion_core::gstc::SheetError;
use illusion_core::synthesis::{synthesize, IllusionProblem, SynthesisError, SynthesisMode};
use illusion_core::wavecore::{chain_reflection, PlaneWave, Stack, WaveError};
use illusion_core::Complex64;
use rayon::prelude::*;

use crate::config::{ConfigError, ScenarioConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Simulate,
    Reflective,
    Transmissive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub freq_ghz: f64,
    pub theta_deg: f64,
    pub gamma_actual: Option<Complex64>,
    pub gamma_target: Option<Complex64>,
    pub rho_required: Option<Complex64>,
    /// `η_m/η_0` in reflective mode, `χ_e` (m) in transmissive mode.
    pub sheet: Option<Complex64>,
    pub passive: Option<bool>,
    pub error: Option<&'static str>,
}

impl SweepRow {
    fn empty(freq_ghz: f64, theta_deg: f64) -> Self {
        Self {
            freq_ghz,
            theta_deg,
            gamma_actual: None,
            gamma_target: None,
            rho_required: None,
            sheet: None,
            passive: None,
            error: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub kind: TableKind,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// True when the grid is non-empty and no point produced a result.
    pub fn all_failed(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.error.is_some())
    }
}

pub fn wave_error_slug(e: &WaveError) -> &'static str {
    match e {
        WaveError::InvalidMedium(_) => "invalid-medium",
        WaveError::InvalidThickness(_) => "invalid-thickness",
        WaveError::EmptyStack => "empty-stack",
        WaveError::InvalidSheet(_) => "invalid-sheet",
        WaveError::InvalidWave(_) => "invalid-wave",
        WaveError::DegenerateInterface => "degenerate-interface",
        WaveError::NonInvertibleSegment => "non-invertible-segment",
        WaveError::ResonantSingularity => "resonant-singularity",
    }
}

pub fn synthesis_error_slug(e: &SynthesisError) -> &'static str {
    match e {
        SynthesisError::Wave(w) => wave_error_slug(w),
        SynthesisError::Sheet(s) => match s {
            SheetError::SheetResonance => "sheet-resonance",
            SheetError::OpenCircuit => "open-circuit",
            SheetError::InfiniteReflection => "infinite-reflection",
            SheetError::ZeroElectricImpedance => "zero-electric-impedance",
            SheetError::GrazingAngle => "grazing-angle",
        },
        SynthesisError::LayerCount(_) => "layer-count",
        SynthesisError::Degenerate => "degenerate",
    }
}

/// Grid points in `(freq, theta)` order.
pub fn grid(config: &ScenarioConfig) -> Vec<(f64, f64)> {
    let thetas = config.sweep.theta_deg.values();
    config
        .sweep
        .freq_ghz
        .values()
        .into_iter()
        .flat_map(|f| thetas.iter().map(move |&t| (f, t)))
        .collect()
}

fn wave_at(freq_ghz: f64, theta_deg: f64) -> Result<PlaneWave, WaveError> {
    PlaneWave::from_degrees_ghz(freq_ghz, theta_deg)
}

fn simulate_point(actual: &Stack, target: &Stack, freq_ghz: f64, theta_deg: f64) -> SweepRow {
    let mut row = SweepRow::empty(freq_ghz, theta_deg);
    let wave = match wave_at(freq_ghz, theta_deg) {
        Ok(w) => w,
        Err(e) => {
            row.error = Some(wave_error_slug(&e));
            return row;
        }
    };
    match chain_reflection(actual, &wave) {
        Ok(g) => row.gamma_actual = Some(g),
        Err(e) => row.error = Some(wave_error_slug(&e)),
    }
    match chain_reflection(target, &wave) {
        Ok(g) => row.gamma_target = Some(g),
        Err(e) => row.error = row.error.or(Some(wave_error_slug(&e))),
    }
    row
}

/// Γ of both environments at every grid point.
pub fn run_simulate(config: &ScenarioConfig) -> Result<SweepTable, ConfigError> {
    config.validate()?;
    let (actual, target) = config.stacks()?;
    let rows = grid(config)
        .par_iter()
        .map(|&(f, t)| simulate_point(&actual, &target, f, t))
        .collect();
    Ok(SweepTable {
        kind: TableKind::Simulate,
        rows,
    })
}

fn synthesize_point(base: &IllusionProblem, freq_ghz: f64, theta_deg: f64) -> SweepRow {
    let mut row = simulate_point(&base.actual, &base.target, freq_ghz, theta_deg);
    if row.error.is_some() {
        return row;
    }
    let wave = wave_at(freq_ghz, theta_deg).expect("validated by simulate_point");
    match synthesize(&base.at(wave)) {
        Ok(out) => {
            row.rho_required = Some(out.rho_required);
            row.sheet = match base.mode {
                SynthesisMode::Reflective => out.eta_required.map(|imp| imp.eta_normalized),
                SynthesisMode::Transmissive => out.chi_e_required,
            };
            row.passive = Some(out.realizability.is_passive());
        }
        Err(e) => row.error = Some(synthesis_error_slug(&e)),
    }
    row
}

/// Required sheet at every grid point, in the configured mode.
pub fn run_synthesize(config: &ScenarioConfig) -> Result<SweepTable, ConfigError> {
    config.validate()?;
    let (actual, target) = config.stacks()?;
    // The wave is replaced per point; any valid one will do here.
    let placeholder = PlaneWave::new(1e9, 0.0).expect("valid wave");
    let base = IllusionProblem::new(actual, target, placeholder, config.mode.into()).map_err(
        |e| match e {
            SynthesisError::LayerCount(n) => ConfigError::Invalid(format!(
                "synthesis needs exactly 3 layers in both actual and target stacks (found {n})"
            )),
            other => ConfigError::Invalid(other.to_string()),
        },
    )?;
    let rows = grid(config)
        .par_iter()
        .map(|&(f, t)| synthesize_point(&base, f, t))
        .collect();
    let kind = match base.mode {
        SynthesisMode::Reflective => TableKind::Reflective,
        SynthesisMode::Transmissive => TableKind::Transmissive,
    };
    Ok(SweepTable { kind, rows })
}
