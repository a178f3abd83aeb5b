//! Closed-form auxiliary models: a radial compression map used for
//! transformation-optics illusions, sinusoidal strip metasurfaces with
//! their Pancharatnam-Berry phase, and grating diffraction angles.

use std::f64::consts::TAU;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompanionError {
    #[error("radial map needs 0 < R1, R1·q < R2 and q > 1 (got R1={r1}, R2={r2}, q={q})")]
    InvalidRadialParameters { r1: f64, r2: f64, q: f64 },
    #[error("radius {r} outside [0, {r2}]")]
    OutOfDomain { r: f64, r2: f64 },
    #[error("strip profile needs A > 0, P > 0 and σ = ±1")]
    InvalidStripProfile,
    #[error("diffraction order {order} is evanescent (|mλ/P| = {ratio} > 1)")]
    EvanescentOrder { order: i32, ratio: f64 },
    #[error("wavelength and period must be positive")]
    InvalidGrating,
}

/// Piecewise-linear radial map compressing `[0, R1·q]` onto `[0, R1]` and
/// stretching `[R1·q, R2]` onto `[R1, R2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialTransform {
    r1: f64,
    r2: f64,
    q: f64,
}

impl RadialTransform {
    pub fn new(r1: f64, r2: f64, q: f64) -> Result<Self, CompanionError> {
        let valid = [r1, r2, q].iter().all(|v| v.is_finite()) && r1 > 0.0 && q > 1.0 && r1 * q < r2;
        if !valid {
            return Err(CompanionError::InvalidRadialParameters { r1, r2, q });
        }
        Ok(Self { r1, r2, q })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Slope of the outer branch, `(R2 − R1)/(R2 − R1 q)`.
    pub fn a(&self) -> f64 {
        (self.r2 - self.r1) / (self.r2 - self.r1 * self.q)
    }

    /// Offset of the outer branch, `(1 − q) R2 R1/(R2 − R1 q)`.
    pub fn b(&self) -> f64 {
        (1.0 - self.q) * self.r2 * self.r1 / (self.r2 - self.r1 * self.q)
    }

    fn check(&self, r: f64) -> Result<(), CompanionError> {
        if !(r.is_finite() && (0.0..=self.r2).contains(&r)) {
            return Err(CompanionError::OutOfDomain { r, r2: self.r2 });
        }
        Ok(())
    }
}

pub fn radial_forward(t: &RadialTransform, r: f64) -> Result<f64, CompanionError> {
    t.check(r)?;
    if r <= t.r1 * t.q {
        Ok(r / t.q)
    } else {
        // a·r + b written about R2 so the outer fixed point is exact
        Ok(t.r2 - t.a() * (t.r2 - r))
    }
}

pub fn radial_inverse(t: &RadialTransform, r_prime: f64) -> Result<f64, CompanionError> {
    t.check(r_prime)?;
    if r_prime <= t.r1 {
        Ok(t.q * r_prime)
    } else {
        Ok(t.r2 - (t.r2 - r_prime) / t.a())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Handedness {
    Left,
    Right,
}

impl Handedness {
    pub fn sign(self) -> f64 {
        match self {
            Handedness::Left => 1.0,
            Handedness::Right => -1.0,
        }
    }

    pub fn from_sign(sigma: i32) -> Option<Self> {
        match sigma {
            1 => Some(Handedness::Left),
            -1 => Some(Handedness::Right),
            _ => None,
        }
    }
}

/// Sinusoidal strip `y = A (P/2π) sin(2πx/P)` under circular polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripProfile {
    pub amplitude: f64,
    pub period: f64,
    pub handedness: Handedness,
}

impl StripProfile {
    pub fn new(
        amplitude: f64,
        period: f64,
        handedness: Handedness,
    ) -> Result<Self, CompanionError> {
        if !(amplitude.is_finite() && amplitude > 0.0 && period.is_finite() && period > 0.0) {
            return Err(CompanionError::InvalidStripProfile);
        }
        Ok(Self {
            amplitude,
            period,
            handedness,
        })
    }

    /// Largest attainable `|Φ|`, `2 arctan(A)`.
    pub fn max_phase(&self) -> f64 {
        2.0 * self.amplitude.atan()
    }
}

pub fn strip_height(p: &StripProfile, x: f64) -> f64 {
    p.amplitude * p.period / TAU * (TAU * x / p.period).sin()
}

/// Geometric phase `Φ = 2σ arctan(A cos(2πx/P))`.
pub fn pb_phase(p: &StripProfile, x: f64) -> f64 {
    2.0 * p.handedness.sign() * (p.amplitude * (TAU * x / p.period).cos()).atan()
}

/// Diffraction angle `arcsin(mλ/P)` of order `m`.
pub fn grating_angle(order: i32, wavelength: f64, period: f64) -> Result<f64, CompanionError> {
    if !(wavelength.is_finite() && wavelength > 0.0 && period.is_finite() && period > 0.0) {
        return Err(CompanionError::InvalidGrating);
    }
    let ratio = order as f64 * wavelength / period;
    if ratio.abs() > 1.0 {
        return Err(CompanionError::EvanescentOrder { order, ratio });
    }
    Ok(ratio.asin())
}
