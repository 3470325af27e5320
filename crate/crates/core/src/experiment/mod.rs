//! Experiment orchestration: single runs with on-disk artifacts, sweeps
//! over template configurations and population sizes, and reports.

mod plan;
mod report;
mod run;
mod sweep;

pub use plan::{parse_grid, Algorithm, ExperimentPlan, GridCell, RunCell};
pub use report::{aggregate, cmd_report, read_sweep, render, MeanStd, ReportRow};
pub use run::{cmd_run, execute, write_artifacts, RunOutput, RunSummary};
pub use sweep::{cmd_sweep, SweepRow};
