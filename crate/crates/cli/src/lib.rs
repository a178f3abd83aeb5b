//! Command-line driver: scenario configuration, sweeps and output writers.

pub mod config;
pub mod emit;
pub mod sweep;
pub mod tables;
