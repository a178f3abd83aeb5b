//! Fully expanded four-product forms of the three-segment illusion
//! condition `Γ_actual(ρ) = Γ_target`.
//!
//! Each product pairs one entry of the actual chain with the forward or
//! backward amplitude of the target chain, written out term by term in the
//! segment phases `Z_n` and interface coefficients `ρ_n`, keeping the usual
//! nested grouping. Read literally, the quotients `(A−B)/(C−D)` and
//! `(a−b)/(c−d)` give the reciprocal of the solution, and the reflective
//! `A`, `B` carry an extra factor of the actual termination `ρ_4`. The
//! solvers in the parent module therefore assemble the same products as
//! `(C−D)/(A'−B')` (with `ρ_4 → 1` inside `A`, `B`) and `(c−d)/(a−b)`.

use num_complex::Complex64;

use super::SynthesisError;
use crate::wavecore::SegmentChain;

/// Phases `Z_1..Z_3` and coefficients `ρ_1..ρ_4` of a three-segment chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentTerms {
    pub phase: [Complex64; 3],
    /// Three interface coefficients followed by the termination reflection.
    pub rho: [Complex64; 4],
}

impl SegmentTerms {
    pub fn from_chain(chain: &SegmentChain) -> Result<Self, SynthesisError> {
        if chain.len() != 3 {
            return Err(SynthesisError::LayerCount(chain.len()));
        }
        Ok(Self {
            phase: [chain.phase[0], chain.phase[1], chain.phase[2]],
            rho: [
                chain.rho[0],
                chain.rho[1],
                chain.rho[2],
                chain.termination_rho,
            ],
        })
    }

    pub fn with_termination(mut self, rho: Complex64) -> Self {
        self.rho[3] = rho;
        self
    }
}

/// Four products whose differences form the synthesis quotient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourTerms {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl FourTerms {
    /// `(a − b)/(c − d)`, the literal reading of the expansion.
    pub fn printed_quotient(&self) -> Complex64 {
        (self.a - self.b) / (self.c - self.d)
    }
}

struct Unpacked {
    z1: Complex64,
    z2: Complex64,
    z3: Complex64,
    iz1: Complex64,
    iz2: Complex64,
    iz3: Complex64,
    r1: Complex64,
    r2: Complex64,
    r3: Complex64,
    r4: Complex64,
}

impl From<&SegmentTerms> for Unpacked {
    fn from(t: &SegmentTerms) -> Self {
        Self {
            z1: t.phase[0],
            z2: t.phase[1],
            z3: t.phase[2],
            iz1: t.phase[0].inv(),
            iz2: t.phase[1].inv(),
            iz3: t.phase[2].inv(),
            r1: t.rho[0],
            r2: t.rho[1],
            r3: t.rho[2],
            r4: t.rho[3],
        }
    }
}

/// Target-side factor multiplying `A` and `D`: the forward amplitude at `z = 0`.
fn target_forward(t: &Unpacked) -> Complex64 {
    ((t.iz1 * t.iz2 + t.r1 * t.z1 * t.r2 * t.iz2) * t.iz3
        + (t.iz1 * t.r2 * t.z2 + t.r1 * t.z1 * t.z2) * t.r3 * t.iz3)
        + ((t.iz1 * t.iz2 + t.r1 * t.z1 * t.r2 * t.iz2) * t.r3 * t.z3
            + (t.iz1 * t.r2 * t.z2 + t.r1 * t.z1 * t.z2) * t.z3)
            * t.r4
}

/// Target-side factor multiplying `B` and `C`: the backward amplitude at `z = 0`.
fn target_backward(t: &Unpacked) -> Complex64 {
    ((t.r1 * t.iz1 * t.iz2 + t.z1 * t.r2 * t.iz2) * t.iz3
        + (t.r1 * t.iz1 * t.r2 * t.z2 + t.z1 * t.z2) * t.r3 * t.iz3)
        + ((t.r1 * t.iz1 * t.iz2 + t.z1 * t.r2 * t.iz2) * t.r3 * t.z3
            + (t.r1 * t.iz1 * t.r2 * t.z2 + t.z1 * t.z2) * t.z3)
            * t.r4
}

/// Products `A, B, C, D` for a sheet replacing the actual termination.
pub fn reflective_terms(actual: &SegmentTerms, target: &SegmentTerms) -> FourTerms {
    let f = Unpacked::from(actual);
    let t = Unpacked::from(target);
    let forward = target_forward(&t);
    let backward = target_backward(&t);

    let a = (((f.r1 * f.iz1 * f.iz2 + f.z1 * f.r2 * f.iz2) * f.r3 * f.z3
        + (f.r1 * f.iz1 * f.r2 * f.z2 + f.z1 * f.z2) * f.z3)
        * f.r4)
        * forward;
    let b = (((f.iz1 * f.iz2 + f.r1 * f.z1 * f.r2 * f.iz2) * f.r3 * f.z3
        + (f.iz1 * f.r2 * f.z2 + f.r1 * f.z1 * f.z2) * f.z3)
        * f.r4)
        * backward;
    let c = ((f.iz1 * f.iz2 + f.r1 * f.z1 * f.r2 * f.iz2) * f.iz3
        + (f.iz1 * f.r2 * f.z2 + f.r1 * f.z1 * f.z2) * f.r3 * f.iz3)
        * backward;
    let d = ((f.r1 * f.iz1 * f.iz2 + f.z1 * f.r2 * f.iz2) * f.iz3
        + (f.r1 * f.iz1 * f.r2 * f.z2 + f.z1 * f.z2) * f.r3 * f.iz3)
        * forward;
    FourTerms { a, b, c, d }
}

/// Products `a, b, c, d` for a sheet replacing the actual first interface.
pub fn transmissive_terms(actual: &SegmentTerms, target: &SegmentTerms) -> FourTerms {
    let f = Unpacked::from(actual);
    let t = Unpacked::from(target);
    let forward = target_forward(&t);
    let backward = target_backward(&t);

    let a = (f.iz3 * f.z1 * f.r2 * f.iz2
        + f.r3 * f.iz3 * f.z1 * f.z2
        + f.r4 * f.r3 * f.z3 * f.z1 * f.r2 * f.iz2
        + f.r4 * f.z3 * f.z1 * f.z2)
        * backward;
    let b = (f.iz1 * f.iz2 * f.iz3
        + f.iz1 * f.r2 * f.z2 * f.r3 * f.iz3
        + f.iz1 * f.iz2 * f.r3 * f.z3 * f.r4
        + f.iz1 * f.r2 * f.z2 * f.z3 * f.r4)
        * forward;
    let c = (f.z1 * f.r2 * f.iz2 * f.iz3
        + f.r3 * f.iz3 * f.z1 * f.z2
        + f.r3 * f.z3 * f.z1 * f.r2 * f.iz2 * f.r4
        + f.r4 * f.z3 * f.z1 * f.z2)
        * forward;
    let d = (f.iz1 * f.iz2 * f.iz3
        + f.iz1 * f.r2 * f.z2 * f.r3 * f.iz3
        + f.iz1 * f.iz2 * f.r3 * f.z3 * f.r4
        + f.iz1 * f.r2 * f.z2 * f.z3 * f.r4)
        * backward;
    FourTerms { a, b, c, d }
}
