//! Modular GP-GOMEA: configuration, initialization, fitness, Gene-pool
//! Optimal Mixing and the generational loop.

mod binning;
mod config;
mod engine;
mod fitness;
mod init;
mod mixing;
mod solution;

pub use binning::{assign_coefficient_bins, quantile_bins};
pub use config::{CoefficientSchedule, RunConfig, TerminalPolicy};
pub use engine::{GenerationLog, Gomea, RunResult, StopReason};
pub(crate) use engine::{drive, RunCore};
pub use fitness::{apply_scaling, score, FitnessEvaluator, FitnessRecord};
pub use init::{initialize_population, samplers, SymbolSampler};
pub use mixing::{coefficient_mutation, gom, Individual, MixContext, MixingStats};
pub use solution::{offer, Archive, FrontPoint, Solution};
