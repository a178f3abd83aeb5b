//! Acceptance suite: one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use common::*;
use illusion_cli::config::builtin_scenario;
use illusion_core::companions::{
    grating_angle, pb_phase, radial_forward, radial_inverse, Handedness, RadialTransform,
    StripProfile,
};
use illusion_core::gstc::{impedance_from_reflection, sheet_coefficients, Susceptibilities};
use illusion_core::synthesis::{
    expanded, reflective_synthesis_closed_form, reflective_synthesis_oracle, synthesize,
    transmissive_reflection_closed_form, transmissive_synthesis, IllusionProblem, SegmentTerms,
    SynthesisMode,
};
use illusion_core::unitcell::{select_state, DistanceMetric, ReflectionMap};
use illusion_core::wavecore::{chain_reflection, PlaneWave, SegmentChain, Stack, Termination};
use illusion_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

/// Scenario grid: θ 0..80 step 0.5°, f 10..12 GHz step 0.1 GHz.
fn scenario_grid() -> Vec<PlaneWave> {
    let cfg = builtin_scenario();
    let thetas = cfg.sweep.theta_deg.values();
    cfg.sweep
        .freq_ghz
        .values()
        .into_iter()
        .flat_map(|f| {
            thetas
                .iter()
                .map(move |&t| PlaneWave::from_degrees_ghz(f, t).unwrap())
                .collect::<Vec<_>>()
        })
        .collect()
}

fn scenario(wave: PlaneWave, mode: SynthesisMode) -> IllusionProblem {
    IllusionProblem::new(fr4_on_pec(), teflon_in_air(), wave, mode).unwrap()
}

fn gap(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn energy_conservation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let count = rng.gen_range(1..=6);
        let stack = Stack::in_air(random_layers(&mut rng, count, true), Termination::Pec).unwrap();
        let f = rng.gen_range(1.0..=20.0);
        for theta in 0..=80 {
            let wave = PlaneWave::from_degrees_ghz(f, theta as f64).unwrap();
            let g = chain_reflection(&stack, &wave).unwrap();
            worst = worst.max((g.norm() - 1.0).abs());
        }
    }
    verdict(
        worst < 1e-12,
        format!("max ||Γ|−1| = {worst:.3e} (tol 1e-12)"),
    )
}

fn oracle_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let count = rng.gen_range(1..=6);
        let stack = Stack::in_air(
            random_layers(&mut rng, count, false),
            random_termination(&mut rng),
        )
        .unwrap();
        let wave = random_wave(&mut rng);
        let chain = chain_reflection(&stack, &wave).unwrap();
        worst = worst.max(relative_error(
            chain,
            linear_system_reflection(&stack, &wave),
        ));
    }
    verdict(
        worst < 1e-9,
        format!("max relative error = {worst:.3e} (tol 1e-9)"),
    )
}

fn closed_form_fidelity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_random: f64 = 0.0;
    for _ in 0..1000 {
        let actual = Stack::in_air(
            random_layers(&mut rng, 3, false),
            random_termination(&mut rng),
        )
        .unwrap();
        let target = Stack::in_air(
            random_layers(&mut rng, 3, false),
            random_termination(&mut rng),
        )
        .unwrap();
        let p = IllusionProblem::new(
            actual,
            target,
            random_wave(&mut rng),
            SynthesisMode::Reflective,
        )
        .unwrap();
        let closed = reflective_synthesis_closed_form(&p).unwrap();
        worst_random = worst_random.max(gap(closed, reflective_synthesis_oracle(&p).unwrap()));
    }
    let mut worst_grid: f64 = 0.0;
    let mut worst_literal: f64 = 0.0;
    for wave in scenario_grid() {
        let p = scenario(wave, SynthesisMode::Reflective);
        let closed = reflective_synthesis_closed_form(&p).unwrap();
        let oracle = reflective_synthesis_oracle(&p).unwrap();
        worst_grid = worst_grid.max(gap(closed, oracle));

        let actual =
            SegmentTerms::from_chain(&SegmentChain::build(&p.actual, &wave).unwrap()).unwrap();
        let target =
            SegmentTerms::from_chain(&SegmentChain::build(&p.target, &wave).unwrap()).unwrap();
        let literal = expanded::reflective_terms(&actual, &target).printed_quotient();
        worst_literal = worst_literal.max(gap(literal, oracle));
    }
    println!(
        "    finding: the expansion read literally as (A−B)/(C−D) deviates from the oracle by up to \
         {worst_literal:.3e} (relative) on the scenario grid; it equals ρ4f/ρ4m. The inverted quotient \
         (C−D)/(A−B) with A, B taken per unit ρ4f is used and agrees with the oracle."
    );
    verdict(
        worst_random < 1e-9 && worst_grid < 1e-9,
        format!("max gap random = {worst_random:.3e}, scenario grid = {worst_grid:.3e} (tol 1e-9)"),
    )
}

fn substitution() -> Verdict {
    let mut worst_r: f64 = 0.0;
    let mut worst_t: f64 = 0.0;
    for wave in scenario_grid() {
        let p = scenario(wave, SynthesisMode::Reflective);
        let target = chain_reflection(&p.target, &wave).unwrap();
        let rho4 = reflective_synthesis_closed_form(&p).unwrap();
        let installed = p.actual.with_termination(Termination::Sheet(rho4)).unwrap();
        worst_r = worst_r.max((chain_reflection(&installed, &wave).unwrap() - target).norm());

        let rho1 = transmissive_reflection_closed_form(&p).unwrap();
        let g = SegmentChain::build(&p.actual, &wave)
            .unwrap()
            .with_front_reflection(rho1)
            .reflection()
            .unwrap();
        worst_t = worst_t.max((g - target).norm());
    }
    verdict(
        worst_r < 1e-9 && worst_t < 1e-9,
        format!(
            "max |Γ − Γ_i| reflective = {worst_r:.3e}, transmissive = {worst_t:.3e} (tol 1e-9)"
        ),
    )
}

fn self_illusion() -> Verdict {
    let mut worst4: f64 = 0.0;
    let mut worst1: f64 = 0.0;
    for stack in [fr4_on_pec(), teflon_in_air()] {
        for wave in scenario_grid() {
            let chain = SegmentChain::build(&stack, &wave).unwrap();
            let p = IllusionProblem::new(
                stack.clone(),
                stack.clone(),
                wave,
                SynthesisMode::Reflective,
            )
            .unwrap();
            let rho4 = reflective_synthesis_closed_form(&p).unwrap();
            worst4 = worst4.max((rho4 - chain.termination_rho).norm());
            let rho1 = transmissive_reflection_closed_form(&p).unwrap();
            worst1 = worst1.max((rho1 - chain.rho[0]).norm());
        }
    }
    verdict(
        worst4 < 1e-12 && worst1 < 1e-12,
        format!("max |ρ4m − ρ4| = {worst4:.3e}, |ρ1m − ρ1| = {worst1:.3e} (tol 1e-12)"),
    )
}

fn chi_round_trip() -> Verdict {
    let mut worst: f64 = 0.0;
    for wave in scenario_grid() {
        let p = scenario(wave, SynthesisMode::Transmissive);
        let (rho, chi) = transmissive_synthesis(&p).unwrap();
        let cos = Complex64::new(wave.theta().cos(), 0.0);
        let (_, back) =
            sheet_coefficients(&Susceptibilities::electric(chi), wave.k0(), cos).unwrap();
        worst = worst.max((back - rho).norm());
    }
    verdict(
        worst < 1e-9,
        format!("max |ρ(χe) − ρ1m| = {worst:.3e} (tol 1e-9)"),
    )
}

fn interior_minima(values: &[f64]) -> usize {
    values
        .windows(3)
        .filter(|w| w[1] < w[0] && w[1] < w[2])
        .count()
}

fn qualitative_reproduction() -> Verdict {
    let thetas = builtin_scenario().sweep.theta_deg.values();
    let (mut actual, mut target) = (Vec::new(), Vec::new());
    for &t in &thetas {
        let wave = PlaneWave::from_degrees_ghz(11.0, t).unwrap();
        actual.push(chain_reflection(&fr4_on_pec(), &wave).unwrap().norm());
        target.push(chain_reflection(&teflon_in_air(), &wave).unwrap().norm());
    }
    let (dips_o, dips_i) = (interior_minima(&actual), interior_minima(&target));
    let out = synthesize(&scenario(
        PlaneWave::from_degrees_ghz(11.0, 0.0).unwrap(),
        SynthesisMode::Reflective,
    ))
    .unwrap();
    let eta = impedance_from_reflection(out.rho_required).unwrap().eta;
    verdict(
        dips_o >= 1 && dips_i >= 1 && eta.re > 0.0,
        format!(
            "interior minima |Γo|: {dips_o}, |Γi|: {dips_i}; Re ηm(θ=0) = {:.3} Ω",
            eta.re
        ),
    )
}

fn unit_cell_anchor() -> Verdict {
    let target = Complex64::from_polar(0.5, 64f64.to_radians());
    let rec = select_state(
        &ReflectionMap::sample(),
        4.5e9,
        target,
        DistanceMetric::Complex,
    )
    .unwrap();
    let pass = rec.resistance == 27.0 && (rec.capacitance_pf() - 0.35).abs() < 1e-12;
    verdict(
        pass,
        format!(
            "selected R = {} Ω, C = {} pF",
            rec.resistance,
            rec.capacitance_pf()
        ),
    )
}

fn companions() -> Verdict {
    let t = RadialTransform::new(0.1, 0.3, 2.0).unwrap();
    let knee = t.r1() * t.q();
    let continuity = (knee / t.q() - (t.a() * knee + t.b())).abs();
    let fixed = radial_forward(&t, 0.0).unwrap().abs()
        + (radial_forward(&t, t.r2()).unwrap() - t.r2()).abs();
    let mut round: f64 = 0.0;
    for i in 0..=1000 {
        let r = t.r2() * i as f64 / 1000.0;
        round = round.max((radial_inverse(&t, radial_forward(&t, r).unwrap()).unwrap() - r).abs());
    }
    let radial = continuity.max(fixed).max(round);

    let grating = (grating_angle(1, 0.5, 1.0).unwrap().to_degrees() - 30.0).abs();

    let mut pb: f64 = 0.0;
    for a in [0.3, 1.0, 2.5] {
        let p = StripProfile::new(a, 0.01, Handedness::Left).unwrap();
        pb = pb.max((pb_phase(&p, 0.0) - 2.0 * f64::atan(a)).abs());
    }
    verdict(
        radial < 1e-12 && grating < 1e-9 && pb < 1e-12,
        format!("radial {radial:.3e} (1e-12), grating {grating:.3e}° (1e-9), PB extremum {pb:.3e} (1e-12)"),
    )
}

fn determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_illusion");
    let run = || {
        Command::new(bin)
            .args(["synthesize", "--scenario", "builtin"])
            .output()
            .expect("binary runs")
    };
    let (first, second) = (run(), run());
    let ok = first.status.success() && second.status.success();
    let same = first.stdout == second.stdout;
    verdict(
        ok && same && !first.stdout.is_empty(),
        format!("{} bytes, identical: {same}", first.stdout.len()),
    )
}

type Check = fn() -> Verdict;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("energy conservation", energy_conservation),
        (
            "transfer matrix vs field-matching oracle",
            oracle_equivalence,
        ),
        ("closed-form sheet vs inversion", closed_form_fidelity),
        ("substitution reproduces target", substitution),
        ("self-illusion identities", self_illusion),
        ("susceptibility round trip", chi_round_trip),
        (
            "resonant dips and positive impedance",
            qualitative_reproduction,
        ),
        ("unit-cell anchor", unit_cell_anchor),
        ("companion closed forms", companions),
        ("byte-identical reruns", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
    }
    println!(
        "acceptance: {}/{} passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
