use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use illusion_cli::config::{builtin_scenario, ModeSpec, OutputFormat, ScenarioConfig};
use illusion_cli::emit::{emit, write_output, CsvTable};
use illusion_cli::sweep::{run_simulate, run_synthesize};
use illusion_cli::tables::{
    coding_set, grating_table, load_json, pb_phase_table, radial_table, select_cell,
    CodingSetConfig, GratingConfig, PbPhaseConfig, RadialConfig, SelectCellConfig,
};

#[derive(Parser)]
#[command(
    name = "illusion",
    version,
    about = "Layered-environment illusion synthesis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scenario {
    Builtin,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Use a built-in preset instead of a config file.
    #[arg(long, value_enum)]
    scenario: Option<Scenario>,
}

#[derive(Args)]
struct Io {
    #[command(flatten)]
    source: Source,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    io: Io,
    /// Overrides the config's output format.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Overrides the config's synthesis mode.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Reflective,
    Transmissive,
}

#[derive(Subcommand)]
enum Command {
    /// Reflection of the actual and target environments over the sweep.
    Simulate(SweepArgs),
    /// Required metasurface over the sweep.
    Synthesize(SynthArgs),
    /// Closest unit-cell state to a target reflection.
    SelectCell(Io),
    /// Uniform-phase coding set from a reflection map.
    CodingSet(Io),
    /// Closed-form companion models.
    #[command(subcommand)]
    Companion(Companion),
}

#[derive(Subcommand)]
enum Companion {
    /// Radial compression map and its inverse.
    ToMap(Io),
    /// Sinusoidal strip height and geometric phase over one period.
    PbPhase(Io),
    /// Diffraction angles of grating orders.
    Grating(Io),
}

enum Failure {
    Config(String),
    Degenerate,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Config(e.to_string())
    }
}

fn base_dir(io: &Io) -> Option<&Path> {
    io.source.config.as_deref().and_then(Path::parent)
}

fn scenario(io: &Io) -> Result<ScenarioConfig, Failure> {
    match &io.source.config {
        Some(path) => Ok(ScenarioConfig::load(path)?),
        None => Ok(builtin_scenario()),
    }
}

fn aux<T: serde::de::DeserializeOwned>(io: &Io, builtin: fn() -> T) -> Result<T, Failure> {
    match &io.source.config {
        Some(path) => Ok(load_json(path)?),
        None => Ok(builtin()),
    }
}

fn sweep_output(args: &SweepArgs, cfg: &ScenarioConfig) -> (OutputFormat, Option<PathBuf>) {
    let format = args.format.unwrap_or(cfg.output.format);
    let path = args.io.out.clone().or_else(|| {
        cfg.output
            .path
            .as_ref()
            .map(|p| match (p.is_relative(), base_dir(&args.io)) {
                (true, Some(dir)) => dir.join(p),
                _ => p.clone(),
            })
    });
    (format, path)
}

fn csv(table: CsvTable, io: &Io) -> Result<(), Failure> {
    Ok(write_output(&table.render(), io.out.as_deref())?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Simulate(args) => {
            let cfg = scenario(&args.io)?;
            let table = run_simulate(&cfg)?;
            let (format, path) = sweep_output(&args, &cfg);
            emit(&table, format, path.as_ref())?;
            if table.all_failed() {
                return Err(Failure::Degenerate);
            }
        }
        Command::Synthesize(args) => {
            let mut cfg = scenario(&args.sweep.io)?;
            match args.mode {
                Some(Mode::Reflective) => cfg.mode = ModeSpec::Reflective,
                Some(Mode::Transmissive) => cfg.mode = ModeSpec::Transmissive,
                None => {}
            }
            let table = run_synthesize(&cfg)?;
            let (format, path) = sweep_output(&args.sweep, &cfg);
            emit(&table, format, path.as_ref())?;
            if table.all_failed() {
                return Err(Failure::Degenerate);
            }
        }
        Command::SelectCell(io) => {
            let cfg = aux(&io, SelectCellConfig::builtin)?;
            csv(select_cell(&cfg, base_dir(&io))?, &io)?;
        }
        Command::CodingSet(io) => {
            let cfg = aux(&io, CodingSetConfig::builtin)?;
            csv(coding_set(&cfg, base_dir(&io))?, &io)?;
        }
        Command::Companion(Companion::ToMap(io)) => {
            csv(radial_table(&aux(&io, RadialConfig::builtin)?)?, &io)?;
        }
        Command::Companion(Companion::PbPhase(io)) => {
            csv(pb_phase_table(&aux(&io, PbPhaseConfig::builtin)?)?, &io)?;
        }
        Command::Companion(Companion::Grating(io)) => {
            csv(grating_table(&aux(&io, GratingConfig::builtin)?)?, &io)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Degenerate) => {
            eprintln!("error: every grid point is numerically degenerate");
            ExitCode::from(2)
        }
    }
}
