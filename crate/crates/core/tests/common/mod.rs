//! Test-only helpers: an interface-by-interface field-matching solver that
//! does not go through transfer matrices, and randomized stack generators.

#![allow(dead_code)]

use illusion_core::wavecore::{Layer, Medium, PlaneWave, Stack, Termination};
use illusion_core::{Complex64, ETA_0};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// Longitudinal wavenumber and `η cos θ` of `medium` for transverse wavenumber `kx`.
fn region(medium: &Medium, k0: f64, kx: Complex64) -> (Complex64, Complex64) {
    let k = k0 * (medium.eps_r * medium.mu_r).sqrt();
    let mut kz = (k * k - kx * kx).sqrt();
    if kz.im > 0.0 {
        kz = -kz;
    }
    let eta = ETA_0 * (medium.mu_r / medium.eps_r).sqrt();
    (kz, eta * kz / k)
}

/// Solves the 2(N+1) field-matching equations for the forward amplitude
/// `a_j` (start of region j) and backward amplitude `b_j` (end of region j)
/// in every region, returning `Γ = b_0 / a_0` at `z = 0`.
pub fn linear_system_reflection(stack: &Stack, wave: &PlaneWave) -> Complex64 {
    let k0 = wave.k0();
    let incident = stack.incident();
    let kx = k0 * (incident.eps_r * incident.mu_r).sqrt() * wave.theta().sin();

    let mut impedance = vec![region(&incident, k0, kx).1];
    let mut phase = vec![Complex64::new(1.0, 0.0)];
    for layer in stack.layers() {
        let (kz, w) = region(&layer.medium(), k0, kx);
        impedance.push(w);
        phase.push((-Complex64::i() * kz * layer.thickness()).exp());
    }

    let n = stack.layers().len();
    let size = 2 * (n + 1);
    let mut m = DMatrix::<Complex64>::zeros(size, size);
    let mut rhs = DVector::<Complex64>::zeros(size);
    let one = Complex64::new(1.0, 0.0);
    let a = |j: usize| 2 * j;
    let b = |j: usize| 2 * j + 1;

    m[(0, a(0))] = one;
    rhs[0] = one;
    for j in 0..n {
        let row = 1 + 2 * j;
        // tangential E continuous
        m[(row, a(j))] = phase[j];
        m[(row, b(j))] = one;
        m[(row, a(j + 1))] = -one;
        m[(row, b(j + 1))] = -phase[j + 1];
        // tangential H continuous
        m[(row + 1, a(j))] = phase[j] / impedance[j];
        m[(row + 1, b(j))] = -one / impedance[j];
        m[(row + 1, a(j + 1))] = -one / impedance[j + 1];
        m[(row + 1, b(j + 1))] = phase[j + 1] / impedance[j + 1];
    }
    let last = size - 1;
    match stack.termination() {
        Termination::Pec => {
            m[(last, a(n))] = phase[n];
            m[(last, b(n))] = one;
        }
        Termination::Open(half_space) => {
            // E = W_out · H at the boundary
            let (_, w_out) = region(&half_space, k0, kx);
            let ratio = w_out / impedance[n];
            m[(last, a(n))] = phase[n] * (one - ratio);
            m[(last, b(n))] = one + ratio;
        }
        Termination::Sheet(rho) => {
            m[(last, a(n))] = -rho * phase[n];
            m[(last, b(n))] = one;
        }
    }

    let x = m
        .lu()
        .solve(&rhs)
        .expect("field-matching system is non-singular");
    x[b(0)] / x[a(0)]
}

pub fn relative_error(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1e-300)
}

pub fn random_medium<R: Rng>(rng: &mut R, lossless: bool) -> Medium {
    let eps = rng.gen_range(1.0..=10.0);
    let tan_delta = if lossless {
        0.0
    } else {
        rng.gen_range(0.0..=0.1)
    };
    Medium::new(Complex64::new(eps, -eps * tan_delta)).unwrap()
}

pub fn random_layers<R: Rng>(rng: &mut R, count: usize, lossless: bool) -> Vec<Layer> {
    (0..count)
        .map(|_| {
            Layer::new(
                random_medium(rng, lossless),
                rng.gen_range(1.0..=200.0) * 1e-3,
            )
            .unwrap()
        })
        .collect()
}

pub fn random_termination<R: Rng>(rng: &mut R) -> Termination {
    match rng.gen_range(0..3) {
        0 => Termination::Pec,
        1 => Termination::Open(random_medium(rng, false)),
        _ => Termination::Sheet(Complex64::from_polar(
            rng.gen_range(0.0..=1.0),
            rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        )),
    }
}

pub fn random_wave<R: Rng>(rng: &mut R) -> PlaneWave {
    PlaneWave::from_degrees_ghz(rng.gen_range(1.0..=20.0), rng.gen_range(0.0..=80.0)).unwrap()
}

/// Actual configuration of the reference scenario: FR4 slab in air on a PEC wall.
pub fn fr4_on_pec() -> Stack {
    let air = Medium::AIR;
    let fr4 = Medium::new(Complex64::new(3.9, -0.08)).unwrap();
    Stack::in_air(
        vec![
            Layer::new(air, 0.120).unwrap(),
            Layer::new(fr4, 0.060).unwrap(),
            Layer::new(air, 0.120).unwrap(),
        ],
        Termination::Pec,
    )
    .unwrap()
}

/// Target configuration: thicker Teflon slab in open air.
pub fn teflon_in_air() -> Stack {
    let air = Medium::AIR;
    let teflon = Medium::new(Complex64::new(2.1, -0.0006)).unwrap();
    Stack::in_air(
        vec![
            Layer::new(air, 0.060).unwrap(),
            Layer::new(teflon, 0.120).unwrap(),
            Layer::new(air, 0.120).unwrap(),
        ],
        Termination::Open(air),
    )
    .unwrap()
}
