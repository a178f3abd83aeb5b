//! Metasurface synthesis for layered-environment illusions.
//!
//! Given the environment that physically exists (`actual`) and the one an
//! observer should infer (`target`), find the sheet that makes the actual
//! total reflection equal the target's `Γ_i` at one `(θ, f)` point:
//!
//! * reflective mode: the sheet replaces the termination of the actual
//!   stack, unknown `ρ_4m`, reported together with its sheet impedance;
//! * transmissive mode: the sheet sits at `z = 0` in front of the actual
//!   stack, unknown `ρ_1m`, reported with its electric susceptibility.
//!
//! Both unknowns have a closed form built from the expanded three-segment
//! products in [`expanded`], and an independent solution obtained by
//! inverting the fractional-linear map `ρ ↦ Γ` of the assembled chain.

pub mod expanded;

use num_complex::Complex64;
use thiserror::Error;

use crate::gstc::{self, SheetError, SheetImpedance};
use crate::wavecore::{PlaneWave, SegmentChain, Stack, TransferMatrix2, WaveError};

pub use expanded::{FourTerms, SegmentTerms};

/// Relative floor below which a synthesis denominator counts as zero.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// Relative disagreement between closed form and inversion that is accepted.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Wave(#[from] WaveError),
    #[error(transparent)]
    Sheet(#[from] SheetError),
    #[error("synthesis needs exactly 3 layers, stack has {0}")]
    LayerCount(usize),
    #[error("degenerate synthesis: no sheet reproduces the target at this point")]
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SynthesisMode {
    Reflective,
    Transmissive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Realizability {
    Passive,
    ActiveRequired,
}

impl Realizability {
    pub fn is_passive(self) -> bool {
        self == Realizability::Passive
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IllusionProblem {
    pub actual: Stack,
    pub target: Stack,
    pub wave: PlaneWave,
    pub mode: SynthesisMode,
}

impl IllusionProblem {
    pub fn new(
        actual: Stack,
        target: Stack,
        wave: PlaneWave,
        mode: SynthesisMode,
    ) -> Result<Self, SynthesisError> {
        for stack in [&actual, &target] {
            if stack.layers().len() != 3 {
                return Err(SynthesisError::LayerCount(stack.layers().len()));
            }
        }
        Ok(Self {
            actual,
            target,
            wave,
            mode,
        })
    }

    pub fn at(&self, wave: PlaneWave) -> Self {
        Self {
            wave,
            ..self.clone()
        }
    }

    fn chains(&self) -> Result<(SegmentChain, SegmentChain), SynthesisError> {
        Ok((
            SegmentChain::build(&self.actual, &self.wave)?,
            SegmentChain::build(&self.target, &self.wave)?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisOutcome {
    pub mode: SynthesisMode,
    /// Required sheet reflection (`ρ_4m` or `ρ_1m`).
    pub rho_required: Complex64,
    /// Reflective mode only.
    pub eta_required: Option<SheetImpedance>,
    /// Transmissive mode only, meters.
    pub chi_e_required: Option<Complex64>,
    pub realizability: Realizability,
    pub gamma_actual: Complex64,
    pub gamma_target: Complex64,
    /// Relative gap between the closed form and the inversion route.
    pub cross_check: f64,
    pub theta: f64,
    pub frequency: f64,
}

fn guarded_quotient(
    num: Complex64,
    den_left: Complex64,
    den_right: Complex64,
) -> Result<Complex64, SynthesisError> {
    let den = den_left - den_right;
    let scale = den_left.norm().max(den_right.norm());
    if !(den.re.is_finite() && den.im.is_finite())
        || den.norm() <= DEGENERACY_TOLERANCE * scale
        || den.norm() == 0.0
    {
        return Err(SynthesisError::Degenerate);
    }
    Ok(num / den)
}

fn relative_gap(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

/// Γ of the environment the observer should infer.
pub fn target_reflection(problem: &IllusionProblem) -> Result<Complex64, SynthesisError> {
    Ok(SegmentChain::build(&problem.target, &problem.wave)?.reflection()?)
}

/// Γ of the environment as it physically exists, without any sheet.
pub fn actual_reflection(problem: &IllusionProblem) -> Result<Complex64, SynthesisError> {
    Ok(SegmentChain::build(&problem.actual, &problem.wave)?.reflection()?)
}

/// Load reflection `ρ` with `m.load_reflection(ρ) = gamma`.
pub fn invert_load(m: &TransferMatrix2, gamma: Complex64) -> Result<Complex64, SynthesisError> {
    guarded_quotient(gamma * m.m11 - m.m21, m.m22, gamma * m.m12)
}

/// `ρ_4m` from the expanded products.
pub fn reflective_synthesis_closed_form(
    problem: &IllusionProblem,
) -> Result<Complex64, SynthesisError> {
    let (actual, target) = problem.chains()?;
    let actual = SegmentTerms::from_chain(&actual)?;
    let target = SegmentTerms::from_chain(&target)?;
    // A and B are linear in the actual termination; evaluate them per unit ρ_4.
    let unit =
        expanded::reflective_terms(&actual.with_termination(Complex64::new(1.0, 0.0)), &target);
    guarded_quotient(unit.c - unit.d, unit.a, unit.b)
}

/// `ρ_4m` by inverting `Γ(ρ) = (m21 + m22 ρ)/(m11 + m12 ρ)` of the actual chain.
pub fn reflective_synthesis_oracle(problem: &IllusionProblem) -> Result<Complex64, SynthesisError> {
    let (actual, target) = problem.chains()?;
    let gamma_target = target.reflection()?;
    invert_load(&actual.matrix()?, gamma_target)
}

/// `ρ_1m` from the expanded products.
pub fn transmissive_reflection_closed_form(
    problem: &IllusionProblem,
) -> Result<Complex64, SynthesisError> {
    let (actual, target) = problem.chains()?;
    let actual = SegmentTerms::from_chain(&actual)?;
    let target = SegmentTerms::from_chain(&target)?;
    let terms = expanded::transmissive_terms(&actual, &target);
    guarded_quotient(terms.c - terms.d, terms.a, terms.b)
}

/// `ρ_1m` by inverting the dependence of Γ on the first interface
/// coefficient, with the tail `M_2 M_3` assembled by [`SegmentChain`].
pub fn transmissive_synthesis_oracle(
    problem: &IllusionProblem,
) -> Result<Complex64, SynthesisError> {
    let (actual, target) = problem.chains()?;
    let gamma_target = target.reflection()?;
    let tail = actual.partial_matrix(1..actual.len())?;
    let rho_t = actual.termination_rho;
    let forward = tail.m11 + tail.m12 * rho_t;
    let backward = tail.m21 + tail.m22 * rho_t;
    // Γ(ρ) = (ρ X + Y)/(X + ρ Y)
    let x = actual.phase[0].inv() * forward;
    let y = actual.phase[0] * backward;
    guarded_quotient(gamma_target * x - y, x, gamma_target * y)
}

/// `(ρ_1m, χ_e)`: the front-sheet reflection and the electric susceptibility
/// (`χ_m = 0`) that produces it at the incidence angle.
pub fn transmissive_synthesis(
    problem: &IllusionProblem,
) -> Result<(Complex64, Complex64), SynthesisError> {
    let rho = transmissive_reflection_closed_form(problem)?;
    let cos_theta = Complex64::new(problem.wave.theta().cos(), 0.0);
    let chi_e = gstc::electric_susceptibility(rho, problem.wave.k0(), cos_theta)
        .map_err(|_| SynthesisError::Degenerate)?;
    Ok((rho, chi_e))
}

/// Passive iff `|ρ| ≤ 1` and the equivalent sheet impedance has a
/// non-negative real part. The lossless rim `|ρ| = 1` counts as passive.
pub fn classify_realizability(rho: Complex64) -> Realizability {
    const RIM: f64 = 1e-12;
    if rho.norm() > 1.0 + RIM {
        return Realizability::ActiveRequired;
    }
    match gstc::impedance_from_reflection(rho) {
        Ok(imp) if imp.eta_normalized.re < -RIM => Realizability::ActiveRequired,
        _ => Realizability::Passive,
    }
}

/// Full synthesis at the problem's `(θ, f)` point.
///
/// The closed form is cross-checked against the inversion route; when they
/// disagree by more than [`CROSS_CHECK_TOLERANCE`] the inversion wins.
pub fn synthesize(problem: &IllusionProblem) -> Result<SynthesisOutcome, SynthesisError> {
    let gamma_actual = actual_reflection(problem)?;
    let gamma_target = target_reflection(problem)?;
    let (closed, oracle) = match problem.mode {
        SynthesisMode::Reflective => (
            reflective_synthesis_closed_form(problem)?,
            reflective_synthesis_oracle(problem)?,
        ),
        SynthesisMode::Transmissive => (
            transmissive_reflection_closed_form(problem)?,
            transmissive_synthesis_oracle(problem)?,
        ),
    };
    let cross_check = relative_gap(closed, oracle);
    let rho = if cross_check <= CROSS_CHECK_TOLERANCE {
        closed
    } else {
        oracle
    };

    let (eta_required, chi_e_required) = match problem.mode {
        SynthesisMode::Reflective => (Some(gstc::impedance_from_reflection(rho)?), None),
        SynthesisMode::Transmissive => {
            let cos_theta = Complex64::new(problem.wave.theta().cos(), 0.0);
            let chi = gstc::electric_susceptibility(rho, problem.wave.k0(), cos_theta)?;
            (None, Some(chi))
        }
    };

    Ok(SynthesisOutcome {
        mode: problem.mode,
        rho_required: rho,
        eta_required,
        chi_e_required,
        realizability: classify_realizability(rho),
        gamma_actual,
        gamma_target,
        cross_check,
        theta: problem.wave.theta(),
        frequency: problem.wave.frequency(),
    })
}
