use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::plan::{ExperimentPlan, RunCell};
use super::run::{execute, RunSummary};
use crate::error::{Error, Result};

/// One row of `sweep.csv`. Failed runs keep their identifying columns and
/// the error message; their result columns are empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub algo: String,
    pub config: String,
    pub trees: usize,
    pub depth: usize,
    pub population: usize,
    pub repetition: usize,
    pub seed: u64,
    pub r2_train: Option<f64>,
    pub r2_test: Option<f64>,
    pub recovered: Option<bool>,
    pub nodes: Option<usize>,
    pub nodes_deduplicated: Option<usize>,
    pub nodes_expanded: Option<usize>,
    pub subexpr_used: Option<usize>,
    pub subexpr_reused: Option<usize>,
    pub subexpr_reused_as_function: Option<usize>,
    pub evaluations: Option<u64>,
    pub generations: Option<usize>,
    pub wall_seconds: Option<f64>,
    pub error: String,
}

impl SweepRow {
    pub fn from_summary(s: &RunSummary) -> Self {
        SweepRow {
            algo: s.algo.to_string(),
            config: s.config.clone(),
            trees: s.trees,
            depth: s.depth,
            population: s.population,
            repetition: s.repetition,
            seed: s.seed,
            r2_train: Some(s.r2_train),
            r2_test: s.r2_test,
            recovered: s.recovered,
            nodes: Some(s.usage.nodes_total),
            nodes_deduplicated: Some(s.usage.nodes_deduplicated),
            nodes_expanded: Some(s.usage.nodes_expanded),
            subexpr_used: Some(s.usage.subexpressions_used),
            subexpr_reused: Some(s.usage.subexpressions_reused),
            subexpr_reused_as_function: Some(s.usage.reused_as_function),
            evaluations: Some(s.evaluations),
            generations: Some(s.generations),
            wall_seconds: Some(s.wall_seconds),
            error: String::new(),
        }
    }

    fn failed(plan: &ExperimentPlan, cell: RunCell, error: &Error) -> Self {
        SweepRow {
            algo: plan.algorithm.to_string(),
            config: cell.grid.to_string(),
            trees: cell.grid.trees,
            depth: cell.grid.depth,
            population: cell.population,
            repetition: cell.repetition,
            seed: plan.run_seed(cell),
            r2_train: None,
            r2_test: None,
            recovered: None,
            nodes: None,
            nodes_deduplicated: None,
            nodes_expanded: None,
            subexpr_used: None,
            subexpr_reused: None,
            subexpr_reused_as_function: None,
            evaluations: None,
            generations: None,
            wall_seconds: None,
            error: error.to_string(),
        }
    }
}

/// Runs every cell of the plan and writes `sweep.csv` to `plan.out`, one
/// row per run. A failing run is recorded and the sweep continues.
/// `progress` is called after each run.
pub fn cmd_sweep(plan: &ExperimentPlan, mut progress: impl FnMut(&SweepRow)) -> Result<PathBuf> {
    plan.validate()?;
    std::fs::create_dir_all(&plan.out).map_err(|e| Error::io(&plan.out, e))?;
    let path = plan.out.join("sweep.csv");
    let fmt = |e: csv::Error| Error::Format {
        path: path.clone(),
        message: e.to_string(),
    };
    let mut w = csv::Writer::from_path(&path).map_err(fmt)?;
    for cell in plan.cells() {
        let row = match execute(plan, cell) {
            Ok(out) => SweepRow::from_summary(&out.summary),
            Err(e) => SweepRow::failed(plan, cell, &e),
        };
        w.serialize(&row).map_err(fmt)?;
        w.flush().map_err(|e| Error::io(&path, e))?;
        progress(&row);
    }
    Ok(path)
}
