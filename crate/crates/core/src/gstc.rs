//! Zero-thickness sheet models.
//!
//! A sheet is described either by its surface susceptibilities `(χ_e, χ_m)`
//! (meters), by its reflection coefficient, or by an equivalent sheet
//! impedance. The 1D scalar reduction is used throughout: tangential field
//! amplitudes on side 1 (incident) and side 2 (transmitted).

use num_complex::Complex64;
use thiserror::Error;

use crate::ETA_0;

const DENOMINATOR_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SheetError {
    #[error("sheet resonance: susceptibility denominator vanishes")]
    SheetResonance,
    #[error("open circuit: ρ = 1 maps to an infinite sheet impedance")]
    OpenCircuit,
    #[error("impedance -η0 maps to an infinite reflection coefficient")]
    InfiniteReflection,
    #[error("zero electric sheet impedance with non-zero average field")]
    ZeroElectricImpedance,
    #[error("cos θ must be non-zero")]
    GrazingAngle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Susceptibilities {
    pub chi_e: Complex64,
    pub chi_m: Complex64,
}

impl Susceptibilities {
    pub fn new(chi_e: Complex64, chi_m: Complex64) -> Self {
        Self { chi_e, chi_m }
    }

    /// Purely electric sheet (`χ_m = 0`).
    pub fn electric(chi_e: Complex64) -> Self {
        Self::new(chi_e, Complex64::new(0.0, 0.0))
    }

    pub fn transparent() -> Self {
        Self::electric(Complex64::new(0.0, 0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetImpedance {
    /// Impedance in ohms.
    pub eta: Complex64,
    /// `eta / η_0`.
    pub eta_normalized: Complex64,
}

impl SheetImpedance {
    pub fn from_ohms(eta: Complex64) -> Self {
        Self {
            eta,
            eta_normalized: eta / ETA_0,
        }
    }

    pub fn from_normalized(eta_normalized: Complex64) -> Self {
        Self {
            eta: eta_normalized * ETA_0,
            eta_normalized,
        }
    }
}

/// Tangential fields on both faces of a sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldJump {
    pub e1: Complex64,
    pub e2: Complex64,
    pub h1: Complex64,
    pub h2: Complex64,
}

impl FieldJump {
    pub fn new(e1: Complex64, e2: Complex64, h1: Complex64, h2: Complex64) -> Self {
        Self { e1, e2, h1, h2 }
    }

    pub fn e_av(&self) -> Complex64 {
        (self.e1 + self.e2) / 2.0
    }

    pub fn h_av(&self) -> Complex64 {
        (self.h1 + self.h2) / 2.0
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self::new(self.e1 * s, self.e2 * s, self.h1 * s, self.h2 * s)
    }
}

/// Transmission and reflection `(τ, ρ)` of a susceptibility sheet.
///
/// The wavenumber is taken as `k_0 / cos θ`, which is `k_0` at normal
/// incidence and matches [`electric_susceptibility`] at oblique incidence.
pub fn sheet_coefficients(
    chi: &Susceptibilities,
    k0: f64,
    cos_theta: Complex64,
) -> Result<(Complex64, Complex64), SheetError> {
    if cos_theta.norm() == 0.0 {
        return Err(SheetError::GrazingAngle);
    }
    let half_k = k0 / (2.0 * cos_theta);
    let j = Complex64::i();
    let product = half_k * half_k * chi.chi_e * chi.chi_m;
    let den = 1.0 + product - j * half_k * (chi.chi_m - chi.chi_e);
    if !(den.re.is_finite() && den.im.is_finite()) || den.norm() <= DENOMINATOR_FLOOR {
        return Err(SheetError::SheetResonance);
    }
    let tau = (1.0 - product) / den;
    let rho = j * half_k * (chi.chi_m + chi.chi_e) / den;
    Ok((tau, rho))
}

/// Electric susceptibility of a `χ_m = 0` sheet reflecting `rho` at the
/// angle whose cosine is `cos_theta`.
pub fn electric_susceptibility(
    rho: Complex64,
    k0: f64,
    cos_theta: Complex64,
) -> Result<Complex64, SheetError> {
    if cos_theta.norm() == 0.0 {
        return Err(SheetError::GrazingAngle);
    }
    let one_minus = 1.0 - rho;
    if one_minus.norm() == 0.0 {
        return Err(SheetError::OpenCircuit);
    }
    let half_k = k0 / (2.0 * cos_theta);
    Ok(rho / (Complex64::i() * half_k * one_minus))
}

/// `η = η_0 (1 + ρ)/(1 − ρ)`.
pub fn impedance_from_reflection(rho: Complex64) -> Result<SheetImpedance, SheetError> {
    let den = 1.0 - rho;
    if den.norm() == 0.0 {
        return Err(SheetError::OpenCircuit);
    }
    Ok(SheetImpedance::from_normalized((1.0 + rho) / den))
}

/// `ρ = (η − η_0)/(η + η_0)`.
pub fn reflection_from_impedance(imp: &SheetImpedance) -> Result<Complex64, SheetError> {
    let z = imp.eta_normalized;
    let den = z + 1.0;
    if den.norm() == 0.0 {
        return Err(SheetError::InfiniteReflection);
    }
    Ok((z - 1.0) / den)
}

/// Electric and magnetic surface currents `(J_e, J_m)` sustaining the jump.
pub fn surface_currents(jump: &FieldJump) -> (Complex64, Complex64) {
    (jump.h2 - jump.h1, jump.e2 - jump.e1)
}

/// Residuals of the impedance boundary conditions
/// `H_2 − H_1 = E_av / Z_e` and `E_2 − E_1 = Z_m H_av`.
pub fn ibc_residual(
    jump: &FieldJump,
    z_e: Complex64,
    z_m: Complex64,
) -> Result<(Complex64, Complex64), SheetError> {
    let (j_e, j_m) = surface_currents(jump);
    let e_av = jump.e_av();
    let electric_term = if z_e.norm() == 0.0 {
        // PEC sheet: only E_av = 0 is admissible.
        if e_av.norm() != 0.0 {
            return Err(SheetError::ZeroElectricImpedance);
        }
        Complex64::new(0.0, 0.0)
    } else {
        e_av / z_e
    };
    Ok((j_e - electric_term, j_m - jump.h_av() * z_m))
}
