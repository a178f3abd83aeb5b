//! Tunable unit-cell states: reflection maps over `(R, C)` and the choice
//! of states that realise a required reflection or a coding set.
//!
//! Maps are read from CSV with the header `f_ghz,r_ohm,c_pf,rho_re,rho_im`.
//! Records are stored in SI units (Hz, Ω, F).

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::io::Read;
use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

pub const MAP_HEADER: [&str; 5] = ["f_ghz", "r_ohm", "c_pf", "rho_re", "rho_im"];

/// Admissible reflection amplitude used when none is given.
pub const DEFAULT_MIN_AMPLITUDE: f64 = 0.3;

const FREQUENCY_MATCH: f64 = 1e-9;

const SAMPLE_MAP: &str = include_str!("../data/sample_reflection_map.csv");

#[derive(Debug, Error)]
pub enum UnitCellError {
    #[error("cannot read reflection map {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("bad reflection map header, expected `{}`", MAP_HEADER.join(","))]
    Header,
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: duplicate state f={f_ghz} GHz, R={r_ohm} Ω, C={c_pf} pF")]
    DuplicateState {
        line: u64,
        f_ghz: f64,
        r_ohm: f64,
        c_pf: f64,
    },
    #[error("reflection map has no records")]
    EmptyMap,
    #[error("no records at {0} GHz")]
    MissingFrequency(f64),
    #[error(
        "coding set needs {needed} states with |ρ| ≥ {min_amplitude}, only {available} available"
    )]
    InfeasibleCodingSet {
        needed: usize,
        available: usize,
        min_amplitude: f64,
    },
    #[error("coding set needs at least one bit, got {0}")]
    InvalidBitCount(u32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitCellRecord {
    /// Hz.
    pub frequency: f64,
    /// Ω.
    pub resistance: f64,
    /// F.
    pub capacitance: f64,
    pub rho: Complex64,
}

impl UnitCellRecord {
    pub fn new(f_ghz: f64, r_ohm: f64, c_pf: f64, rho: Complex64) -> Result<Self, String> {
        if !(f_ghz.is_finite() && f_ghz > 0.0) {
            return Err(format!("frequency must be positive, got {f_ghz} GHz"));
        }
        if !(r_ohm.is_finite() && r_ohm > 0.0) {
            return Err(format!("resistance must be positive, got {r_ohm} Ω"));
        }
        if !(c_pf.is_finite() && c_pf > 0.0) {
            return Err(format!("capacitance must be positive, got {c_pf} pF"));
        }
        if !(rho.re.is_finite() && rho.im.is_finite()) {
            return Err(format!("reflection must be finite, got {rho}"));
        }
        Ok(Self {
            frequency: f_ghz * 1e9,
            resistance: r_ohm,
            capacitance: c_pf * 1e-12,
            rho,
        })
    }

    pub fn frequency_ghz(&self) -> f64 {
        self.frequency * 1e-9
    }

    pub fn capacitance_pf(&self) -> f64 {
        self.capacitance * 1e12
    }

    /// Reflection amplitude (RA).
    pub fn amplitude(&self) -> f64 {
        self.rho.norm()
    }

    /// Reflection phase (RP) in radians, in `(-π, π]`.
    pub fn phase(&self) -> f64 {
        self.rho.arg()
    }

    fn state_order(&self, other: &Self) -> Ordering {
        self.resistance
            .total_cmp(&other.resistance)
            .then(self.capacitance.total_cmp(&other.capacitance))
    }
}

fn same_frequency(a: f64, b: f64) -> bool {
    (a - b).abs() <= FREQUENCY_MATCH * a.abs().max(b.abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionMap {
    records: Vec<UnitCellRecord>,
    frequencies: Vec<f64>,
}

impl ReflectionMap {
    pub fn from_records(records: Vec<UnitCellRecord>) -> Result<Self, UnitCellError> {
        let mut map = Self {
            records: Vec::with_capacity(records.len()),
            frequencies: Vec::new(),
        };
        for (i, record) in records.into_iter().enumerate() {
            map.push(record, i as u64 + 1)?;
        }
        map.finish()
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self, UnitCellError> {
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = csv.headers().map_err(|e| UnitCellError::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        if header.iter().ne(MAP_HEADER.iter().copied()) {
            return Err(UnitCellError::Header);
        }

        let mut map = Self {
            records: Vec::new(),
            frequencies: Vec::new(),
        };
        for row in csv.records() {
            let row = row.map_err(|e| UnitCellError::Parse {
                line: e.position().map_or(0, |p| p.line()),
                message: e.to_string(),
            })?;
            let line = row.position().map_or(0, |p| p.line());
            let mut values = [0.0; 5];
            for (slot, (field, name)) in values.iter_mut().zip(row.iter().zip(MAP_HEADER)) {
                *slot = field.parse::<f64>().map_err(|_| UnitCellError::Parse {
                    line,
                    message: format!("`{field}` is not a number in column {name}"),
                })?;
            }
            let [f, r, c, re, im] = values;
            let record = UnitCellRecord::new(f, r, c, Complex64::new(re, im))
                .map_err(|message| UnitCellError::Parse { line, message })?;
            map.push(record, line)?;
        }
        map.finish()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, UnitCellError> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|source| UnitCellError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_reader(std::io::BufReader::new(file))
    }

    /// Bundled synthetic map at 4.5, 5.0 and 5.5 GHz.
    pub fn sample() -> Self {
        Self::from_reader(SAMPLE_MAP.as_bytes()).expect("bundled sample map is valid")
    }

    fn push(&mut self, record: UnitCellRecord, line: u64) -> Result<(), UnitCellError> {
        let duplicate = self.records.iter().any(|r| {
            r.frequency == record.frequency
                && r.resistance == record.resistance
                && r.capacitance == record.capacitance
        });
        if duplicate {
            return Err(UnitCellError::DuplicateState {
                line,
                f_ghz: record.frequency_ghz(),
                r_ohm: record.resistance,
                c_pf: record.capacitance_pf(),
            });
        }
        self.records.push(record);
        Ok(())
    }

    fn finish(mut self) -> Result<Self, UnitCellError> {
        if self.records.is_empty() {
            return Err(UnitCellError::EmptyMap);
        }
        let mut freqs: Vec<f64> = self.records.iter().map(|r| r.frequency).collect();
        freqs.sort_by(f64::total_cmp);
        freqs.dedup_by(|a, b| same_frequency(*a, *b));
        self.frequencies = freqs;
        Ok(self)
    }

    pub fn records(&self) -> &[UnitCellRecord] {
        &self.records
    }

    /// Distinct frequencies in Hz, ascending.
    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Records at `frequency` (Hz).
    pub fn at_frequency(
        &self,
        frequency: f64,
    ) -> Result<impl Iterator<Item = &UnitCellRecord> + '_, UnitCellError> {
        if !self
            .frequencies
            .iter()
            .any(|&f| same_frequency(f, frequency))
        {
            return Err(UnitCellError::MissingFrequency(frequency * 1e-9));
        }
        Ok(self
            .records
            .iter()
            .filter(move |r| same_frequency(r.frequency, frequency)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMetric {
    /// Euclidean distance in the complex plane.
    #[default]
    Complex,
    /// Wrapped phase difference only.
    Phase,
}

/// `|((a − b + π) mod 2π) − π|`, in `[0, π]`.
pub fn wrapped_phase_distance(a: f64, b: f64) -> f64 {
    ((a - b + PI).rem_euclid(TAU) - PI).abs()
}

fn distance(metric: DistanceMetric, record: &UnitCellRecord, target: Complex64) -> f64 {
    match metric {
        DistanceMetric::Complex => (record.rho - target).norm(),
        DistanceMetric::Phase => wrapped_phase_distance(record.phase(), target.arg()),
    }
}

/// State at `frequency` (Hz) whose reflection is closest to `target`;
/// ties go to the smaller R, then the smaller C.
pub fn select_state(
    map: &ReflectionMap,
    frequency: f64,
    target: Complex64,
    metric: DistanceMetric,
) -> Result<UnitCellRecord, UnitCellError> {
    map.at_frequency(frequency)?
        .map(|r| (distance(metric, r, target), r))
        .min_by(|(da, a), (db, b)| da.total_cmp(db).then_with(|| a.state_order(b)))
        .map(|(_, r)| *r)
        .ok_or(UnitCellError::MissingFrequency(frequency * 1e-9))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodingSet {
    pub n_bit: u32,
    /// One state per slot, slot `k` targeting `target_phases[k]`.
    pub states: Vec<UnitCellRecord>,
    /// `φ_0 + k·2π/2^n_bit` (rad).
    pub target_phases: Vec<f64>,
}

impl CodingSet {
    pub fn phase_step(&self) -> f64 {
        TAU / self.states.len() as f64
    }

    /// Wrapped phase error of each slot.
    pub fn phase_errors(&self) -> Vec<f64> {
        self.states
            .iter()
            .zip(&self.target_phases)
            .map(|(s, &t)| wrapped_phase_distance(s.phase(), t))
            .collect()
    }
}

/// Picks `2^n_bit` distinct states whose phases follow a uniform progression
/// anchored at the highest-amplitude admissible state.
pub fn build_coding_set(
    map: &ReflectionMap,
    frequency: f64,
    n_bit: u32,
    min_amplitude: f64,
) -> Result<CodingSet, UnitCellError> {
    if n_bit == 0 || n_bit > 16 {
        return Err(UnitCellError::InvalidBitCount(n_bit));
    }
    let slots = 1usize << n_bit;
    let mut admissible: Vec<UnitCellRecord> = map
        .at_frequency(frequency)?
        .filter(|r| r.amplitude() >= min_amplitude)
        .copied()
        .collect();
    if admissible.len() < slots {
        return Err(UnitCellError::InfeasibleCodingSet {
            needed: slots,
            available: admissible.len(),
            min_amplitude,
        });
    }
    admissible.sort_by(|a, b| a.state_order(b));

    let anchor = admissible
        .iter()
        .min_by(|a, b| {
            b.amplitude()
                .total_cmp(&a.amplitude())
                .then_with(|| a.state_order(b))
        })
        .expect("admissible set is non-empty")
        .phase();

    let step = TAU / slots as f64;
    let target_phases: Vec<f64> = (0..slots).map(|k| anchor + k as f64 * step).collect();
    let mut used = vec![false; admissible.len()];
    let mut states = Vec::with_capacity(slots);
    for &target in &target_phases {
        let (index, _) = admissible
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .min_by(|(_, a), (_, b)| {
                wrapped_phase_distance(a.phase(), target)
                    .total_cmp(&wrapped_phase_distance(b.phase(), target))
                    .then_with(|| b.amplitude().total_cmp(&a.amplitude()))
                    .then_with(|| a.state_order(b))
            })
            .expect("enough admissible states");
        used[index] = true;
        states.push(admissible[index]);
    }

    Ok(CodingSet {
        n_bit,
        states,
        target_phases,
    })
}
