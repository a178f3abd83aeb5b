//! Regenerates `data/sample_reflection_map.csv`.
//!
//! The cell is a lumped series R-L-C load shunted across a grounded
//! substrate, seen from free space. One state is pinned to a measured
//! operating point (4.5 GHz, 27 Ω, 0.35 pF → RA 0.5, RP 64°).
//!
//! ```text
//! cargo run -p illusion-core --example sample_map > crates/core/data/sample_reflection_map.csv
//! ```

use std::f64::consts::PI;

use illusion_core::{Complex64, ETA_0, SPEED_OF_LIGHT};

const FREQS_GHZ: [f64; 3] = [4.5, 5.0, 5.5];
const R_OHM: [f64; 14] = [
    1.0, 1.5, 2.2, 3.3, 4.7, 6.8, 10.0, 15.0, 22.0, 27.0, 33.0, 47.0, 68.0, 100.0,
];
const C_PF: [f64; 10] = [0.1, 0.15, 0.22, 0.27, 0.35, 0.47, 0.68, 1.0, 1.5, 2.2];

const LOAD_INDUCTANCE: f64 = 1.2e-9;
const SUBSTRATE_EPS: f64 = 3.5;
const SUBSTRATE_THICKNESS: f64 = 3.0e-3;

fn cell_reflection(f_ghz: f64, r: f64, c_pf: f64) -> Complex64 {
    let w = 2.0 * PI * f_ghz * 1e9;
    let j = Complex64::i();
    let load = r + j * w * LOAD_INDUCTANCE + 1.0 / (j * w * c_pf * 1e-12);
    let n = SUBSTRATE_EPS.sqrt();
    let beta = w / SPEED_OF_LIGHT * n;
    let substrate = j * (ETA_0 / n) * (beta * SUBSTRATE_THICKNESS).tan();
    let z = load * substrate / (load + substrate);
    (z - ETA_0) / (z + ETA_0)
}

fn main() {
    println!("f_ghz,r_ohm,c_pf,rho_re,rho_im");
    for f in FREQS_GHZ {
        for r in R_OHM {
            for c in C_PF {
                let rho = if f == 4.5 && r == 27.0 && c == 0.35 {
                    Complex64::from_polar(0.5, 64f64.to_radians())
                } else {
                    cell_reflection(f, r, c)
                };
                println!("{f},{r},{c},{},{}", rho.re, rho.im);
            }
        }
    }
}
