//! Plane-wave reflection from 1D layered environments and synthesis of the
//! metasurface state that makes one environment scatter like another.
//!
//! The crate is organised bottom-up:
//!
//! * [`wavecore`] propagates a plane wave through a layered [`Stack`] with
//!   2×2 transfer matrices and returns the total reflection Γ.
//! * [`gstc`] models zero-thickness sheets (susceptibilities, sheet
//!   impedances, field jumps).
//! * [`synthesis`] solves for the sheet reflection that turns an actual
//!   environment into a target one, in closed form and by direct inversion.
//! * [`unitcell`] maps a required reflection onto tunable unit-cell states.
//! * [`companions`] holds small closed-form auxiliary models (radial
//!   coordinate transformation, sinusoidal strips, grating orders).
//!
//! All complex quantities use the `e^{+jωt}` time convention: passive lossy
//! media carry a negative imaginary permittivity.

pub mod companions;
pub mod gstc;
pub mod synthesis;
pub mod unitcell;
pub mod wavecore;

pub use num_complex::Complex64;

pub use gstc::{SheetError, SheetImpedance, Susceptibilities};
pub use synthesis::{
    IllusionProblem, Realizability, SynthesisError, SynthesisMode, SynthesisOutcome,
};
pub use unitcell::{CodingSet, ReflectionMap, UnitCellError, UnitCellRecord};
pub use wavecore::{
    Layer, LayerWaveState, Medium, PlaneWave, Polarization, Stack, Termination, TransferMatrix2,
    WaveError,
};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Characteristic impedance of free space (Ω).
pub const ETA_0: f64 = 376.730_313_668;
