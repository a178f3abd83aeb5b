//! Plane-wave propagation through a 1D layered stack.
//!
//! A [`Stack`] is an incident half-space, an ordered list of slabs and a
//! [`Termination`]. Each slab contributes one segment matrix
//!
//! ```text
//! M_n = (1/τ_n) [[Z_n⁻¹, ρ_n Z_n], [ρ_n Z_n⁻¹, Z_n]]
//! ```
//!
//! where `ρ_n, τ_n` are the coefficients of the interface in front of slab
//! `n` and `Z_n = exp(-j k_n l_n cos θ_n)` its propagation phase. The product
//! `M = M_1 M_2 … M_N` maps the amplitudes at the termination to those at
//! `z = 0`, so the total reflection is `Γ = (m21 + m22 ρ_T)/(m11 + m12 ρ_T)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::Mul;

use num_complex::Complex64;
use thiserror::Error;

use crate::{ETA_0, SPEED_OF_LIGHT};

const DENOMINATOR_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WaveError {
    #[error("invalid medium: {0}")]
    InvalidMedium(String),
    #[error("layer thickness must be finite and non-negative, got {0} m")]
    InvalidThickness(f64),
    #[error("a stack needs at least one layer")]
    EmptyStack,
    #[error("sheet termination reflection must be finite, got {0}")]
    InvalidSheet(Complex64),
    #[error("invalid plane wave: {0}")]
    InvalidWave(String),
    #[error("degenerate interface: η·cosθ sum vanishes")]
    DegenerateInterface,
    #[error("segment is not invertible: τ = 0")]
    NonInvertibleSegment,
    #[error("resonant singularity: reflection denominator vanishes")]
    ResonantSingularity,
}

fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Homogeneous isotropic medium described by relative constitutive parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium {
    pub eps_r: Complex64,
    pub mu_r: Complex64,
}

impl Medium {
    pub const AIR: Medium = Medium {
        eps_r: Complex64::new(1.0, 0.0),
        mu_r: Complex64::new(1.0, 0.0),
    };

    /// Non-magnetic medium with the given relative permittivity.
    pub fn new(eps_r: Complex64) -> Result<Self, WaveError> {
        Self::with_permeability(eps_r, Complex64::new(1.0, 0.0))
    }

    pub fn with_permeability(eps_r: Complex64, mu_r: Complex64) -> Result<Self, WaveError> {
        if !is_finite(eps_r) || !is_finite(mu_r) {
            return Err(WaveError::InvalidMedium(format!(
                "non-finite parameters eps_r={eps_r}, mu_r={mu_r}"
            )));
        }
        if eps_r.norm() == 0.0 || mu_r.norm() == 0.0 {
            return Err(WaveError::InvalidMedium(format!(
                "zero parameters eps_r={eps_r}, mu_r={mu_r}"
            )));
        }
        Ok(Self { eps_r, mu_r })
    }

    pub fn is_lossless(&self) -> bool {
        self.eps_r.im == 0.0 && self.mu_r.im == 0.0
    }

    /// Refractive index `√(ε_r μ_r)`, principal branch.
    pub fn refractive_index(&self) -> Complex64 {
        (self.eps_r * self.mu_r).sqrt()
    }

    /// Intrinsic wave impedance `η_0 √(μ_r/ε_r)`.
    pub fn intrinsic_impedance(&self) -> Complex64 {
        ETA_0 * (self.mu_r / self.eps_r).sqrt()
    }

    fn validate(&self) -> Result<(), WaveError> {
        Self::with_permeability(self.eps_r, self.mu_r).map(|_| ())
    }
}

/// A slab of homogeneous medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    medium: Medium,
    thickness: f64,
}

impl Layer {
    /// `thickness` in meters.
    pub fn new(medium: Medium, thickness: f64) -> Result<Self, WaveError> {
        medium.validate()?;
        if !thickness.is_finite() || thickness < 0.0 {
            return Err(WaveError::InvalidThickness(thickness));
        }
        Ok(Self { medium, thickness })
    }

    pub fn medium(&self) -> Medium {
        self.medium
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }
}

/// What lies behind the last layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    /// Perfect electric conductor, `ρ_T = -1`.
    Pec,
    /// Semi-infinite half-space; `ρ_T` is the interface coefficient into it.
    Open(Medium),
    /// Zero-thickness sheet with a prescribed reflection coefficient.
    Sheet(Complex64),
}

impl Termination {
    fn validate(&self) -> Result<(), WaveError> {
        match self {
            Termination::Pec => Ok(()),
            Termination::Open(m) => m.validate(),
            Termination::Sheet(rho) if is_finite(*rho) => Ok(()),
            Termination::Sheet(rho) => Err(WaveError::InvalidSheet(*rho)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stack {
    incident: Medium,
    layers: Vec<Layer>,
    termination: Termination,
}

impl Stack {
    pub fn new(
        incident: Medium,
        layers: Vec<Layer>,
        termination: Termination,
    ) -> Result<Self, WaveError> {
        incident.validate()?;
        if layers.is_empty() {
            return Err(WaveError::EmptyStack);
        }
        for layer in &layers {
            Layer::new(layer.medium, layer.thickness)?;
        }
        termination.validate()?;
        Ok(Self {
            incident,
            layers,
            termination,
        })
    }

    /// Stack illuminated from air.
    pub fn in_air(layers: Vec<Layer>, termination: Termination) -> Result<Self, WaveError> {
        Self::new(Medium::AIR, layers, termination)
    }

    pub fn incident(&self) -> Medium {
        self.incident
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn termination(&self) -> Termination {
        self.termination
    }

    pub fn with_termination(&self, termination: Termination) -> Result<Self, WaveError> {
        Self::new(self.incident, self.layers.clone(), termination)
    }

    /// Total thickness of all layers (m).
    pub fn depth(&self) -> f64 {
        self.layers.iter().map(Layer::thickness).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Polarization {
    #[default]
    Tm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    frequency: f64,
    theta: f64,
    polarization: Polarization,
}

impl PlaneWave {
    /// `frequency` in Hz, `theta` in radians measured from the stack normal.
    pub fn new(frequency: f64, theta: f64) -> Result<Self, WaveError> {
        if !frequency.is_finite() || frequency <= 0.0 {
            return Err(WaveError::InvalidWave(format!(
                "frequency must be positive, got {frequency} Hz"
            )));
        }
        if !theta.is_finite() || !(0.0..FRAC_PI_2).contains(&theta) {
            return Err(WaveError::InvalidWave(format!(
                "incidence angle must lie in [0, π/2), got {theta} rad"
            )));
        }
        Ok(Self {
            frequency,
            theta,
            polarization: Polarization::Tm,
        })
    }

    pub fn from_degrees_ghz(freq_ghz: f64, theta_deg: f64) -> Result<Self, WaveError> {
        Self::new(freq_ghz * 1e9, theta_deg.to_radians())
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn polarization(&self) -> Polarization {
        self.polarization
    }

    /// Free-space wavenumber `2πf/c` (rad/m).
    pub fn k0(&self) -> f64 {
        2.0 * PI * self.frequency / SPEED_OF_LIGHT
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.frequency
    }
}

/// Wave quantities inside one homogeneous region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerWaveState {
    /// Complex wavenumber `k_0 √(ε_r μ_r)` (rad/m).
    pub k: Complex64,
    /// Complex refraction angle (rad).
    pub theta: Complex64,
    /// Intrinsic impedance (Ω).
    pub eta: Complex64,
    pub cos_theta: Complex64,
    pub sin_theta: Complex64,
}

impl LayerWaveState {
    /// State of the half-space the wave arrives from.
    pub fn incident(medium: Medium, wave: &PlaneWave) -> Result<Self, WaveError> {
        medium.validate()?;
        let theta = wave.theta();
        Ok(Self {
            k: wave.k0() * medium.refractive_index(),
            theta: Complex64::new(theta, 0.0),
            eta: medium.intrinsic_impedance(),
            cos_theta: Complex64::new(theta.cos(), 0.0),
            sin_theta: Complex64::new(theta.sin(), 0.0),
        })
    }

    /// Conserved transverse wavenumber `k sin θ`.
    pub fn transverse_wavenumber(&self) -> Complex64 {
        self.k * self.sin_theta
    }

    /// Longitudinal wavenumber `k cos θ`.
    pub fn normal_wavenumber(&self) -> Complex64 {
        self.k * self.cos_theta
    }

    /// `η cos θ`, the impedance entering the interface coefficients.
    pub fn transverse_impedance(&self) -> Complex64 {
        self.eta * self.cos_theta
    }
}

/// Carries the angle chain into `medium`: the transverse wavenumber of
/// `previous` is conserved.
pub fn layer_wave_state(
    medium: Medium,
    wave: &PlaneWave,
    previous: &LayerWaveState,
) -> Result<LayerWaveState, WaveError> {
    medium.validate()?;
    let k = wave.k0() * medium.refractive_index();
    let sin_theta = previous.transverse_wavenumber() / k;
    let mut cos_theta = (Complex64::new(1.0, 0.0) - sin_theta * sin_theta).sqrt();
    // Lossless evanescent case: both roots are imaginary, keep the decaying one.
    if cos_theta.re == 0.0 && (k * cos_theta).im > 0.0 {
        cos_theta = -cos_theta;
    }
    let state = LayerWaveState {
        k,
        theta: sin_theta.asin(),
        eta: medium.intrinsic_impedance(),
        cos_theta,
        sin_theta,
    };
    if !is_finite(state.k) || !is_finite(state.cos_theta) || !is_finite(state.eta) {
        return Err(WaveError::InvalidMedium(format!(
            "non-finite wave state in medium eps_r={}",
            medium.eps_r
        )));
    }
    Ok(state)
}

/// Local reflection and transmission coefficients `(ρ_n, τ_n)` of the
/// interface from region `n` into region `n+1`.
pub fn interface_coefficients(
    state_n: &LayerWaveState,
    state_np1: &LayerWaveState,
) -> Result<(Complex64, Complex64), WaveError> {
    let near = state_n.transverse_impedance();
    let far = state_np1.transverse_impedance();
    let sum = far + near;
    if !is_finite(sum) || sum.norm() <= DENOMINATOR_FLOOR {
        return Err(WaveError::DegenerateInterface);
    }
    let rho = (far - near) / sum;
    let tau = 2.0 * far / sum;
    debug_assert!(
        (1.0 + rho - tau).norm() <= 1e-12 * (1.0 + tau.norm()),
        "1 + ρ = τ violated"
    );
    Ok((rho, tau))
}

/// Propagation phase `Z_n = exp(-j k_n l cos θ_n)` across a slab of
/// thickness `l` meters.
pub fn propagation_phase(state: &LayerWaveState, thickness: f64) -> Result<Complex64, WaveError> {
    if !thickness.is_finite() || thickness < 0.0 {
        return Err(WaveError::InvalidThickness(thickness));
    }
    if thickness == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let phase = state.normal_wavenumber() * thickness;
    Ok((-Complex64::i() * phase).exp())
}

/// 2×2 complex matrix acting on (forward, backward) amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix2 {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(one, zero, zero, one)
    }

    pub fn determinant(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Applies the matrix to `[1, ρ_load]` and returns the ratio of the
    /// backward to the forward amplitude.
    pub fn load_reflection(&self, rho_load: Complex64) -> Result<Complex64, WaveError> {
        let den = self.m11 + self.m12 * rho_load;
        if !is_finite(den) || den.norm() < DENOMINATOR_FLOOR {
            return Err(WaveError::ResonantSingularity);
        }
        Ok((self.m21 + self.m22 * rho_load) / den)
    }
}

impl Mul for TransferMatrix2 {
    type Output = TransferMatrix2;

    fn mul(self, rhs: TransferMatrix2) -> TransferMatrix2 {
        TransferMatrix2 {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }
}

/// Interface-plus-propagation segment matrix.
pub fn segment_matrix(
    rho: Complex64,
    tau: Complex64,
    phase: Complex64,
) -> Result<TransferMatrix2, WaveError> {
    if tau.norm() == 0.0 || !is_finite(tau) {
        return Err(WaveError::NonInvertibleSegment);
    }
    let inv_phase = phase.inv();
    let scale = tau.inv();
    Ok(TransferMatrix2::new(
        scale * inv_phase,
        scale * rho * phase,
        scale * rho * inv_phase,
        scale * phase,
    ))
}

/// Every per-segment quantity of a stack at one excitation.
///
/// Index `n` (0-based) refers to slab `n+1`: `rho[n]`, `tau[n]` belong to
/// the interface in front of it and `phase[n]` to its propagation.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentChain {
    /// Incident half-space state followed by one state per layer.
    pub states: Vec<LayerWaveState>,
    pub rho: Vec<Complex64>,
    pub tau: Vec<Complex64>,
    pub phase: Vec<Complex64>,
    /// Reflection coefficient seen at the far end of the last layer.
    pub termination_rho: Complex64,
}

impl SegmentChain {
    pub fn build(stack: &Stack, wave: &PlaneWave) -> Result<Self, WaveError> {
        let n = stack.layers.len();
        let mut states = Vec::with_capacity(n + 1);
        let mut rho = Vec::with_capacity(n);
        let mut tau = Vec::with_capacity(n);
        let mut phase = Vec::with_capacity(n);

        states.push(LayerWaveState::incident(stack.incident, wave)?);
        for layer in &stack.layers {
            let prev = *states.last().expect("incident state present");
            let state = layer_wave_state(layer.medium, wave, &prev)?;
            let (r, t) = interface_coefficients(&prev, &state)?;
            rho.push(r);
            tau.push(t);
            phase.push(propagation_phase(&state, layer.thickness)?);
            states.push(state);
        }

        let last = *states.last().expect("at least one layer");
        let termination_rho = match stack.termination {
            Termination::Pec => Complex64::new(-1.0, 0.0),
            Termination::Open(half_space) => {
                let beyond = layer_wave_state(half_space, wave, &last)?;
                interface_coefficients(&last, &beyond)?.0
            }
            Termination::Sheet(r) => r,
        };

        Ok(Self {
            states,
            rho,
            tau,
            phase,
            termination_rho,
        })
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn segment(&self, index: usize) -> Result<TransferMatrix2, WaveError> {
        segment_matrix(self.rho[index], self.tau[index], self.phase[index])
    }

    /// Product of the segments in `range`, in incident-to-termination order.
    pub fn partial_matrix(
        &self,
        range: std::ops::Range<usize>,
    ) -> Result<TransferMatrix2, WaveError> {
        range
            .map(|i| self.segment(i))
            .try_fold(TransferMatrix2::identity(), |acc, m| Ok(acc * m?))
    }

    pub fn matrix(&self) -> Result<TransferMatrix2, WaveError> {
        self.partial_matrix(0..self.len())
    }

    pub fn reflection(&self) -> Result<Complex64, WaveError> {
        self.matrix()?.load_reflection(self.termination_rho)
    }

    /// Replaces the first interface by a sheet of reflection `rho`; the
    /// transmission is kept consistent through `τ = 1 + ρ`.
    pub fn with_front_reflection(mut self, rho: Complex64) -> Self {
        self.rho[0] = rho;
        self.tau[0] = 1.0 + rho;
        self
    }

    pub fn with_termination_reflection(mut self, rho: Complex64) -> Self {
        self.termination_rho = rho;
        self
    }
}

/// Total reflection Γ at the front face of the first layer.
pub fn chain_reflection(stack: &Stack, wave: &PlaneWave) -> Result<Complex64, WaveError> {
    SegmentChain::build(stack, wave)?.reflection()
}
