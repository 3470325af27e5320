use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::plan::{Algorithm, ExperimentPlan, RunCell};
use crate::data::{recovery_check, Dataset};
use crate::error::{Error, Result};
use crate::expr::UsageStats;
use crate::gomea::{Gomea, RunResult, StopReason};
use crate::gp::GpEngine;
use crate::linkage::LinkageModel;

/// Outcome of one run, as written to `summary.json` and one sweep row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub algo: Algorithm,
    pub config: String,
    pub trees: usize,
    pub depth: usize,
    pub population: usize,
    pub repetition: usize,
    pub seed: u64,
    pub data_seed: Option<u64>,
    pub r2_train: f64,
    pub r2_test: Option<f64>,
    pub recovered: Option<bool>,
    pub usage: UsageStats,
    pub evaluations: u64,
    pub generations: usize,
    pub stop_reason: StopReason,
    pub wall_seconds: f64,
    pub expression: String,
}

/// A finished run with its data and, for GOMEA, the last linkage model.
#[derive(Debug)]
pub struct RunOutput {
    pub result: RunResult,
    pub dataset: Dataset,
    pub linkage: Option<LinkageModel>,
    pub summary: RunSummary,
}

/// Executes one cell of a plan.
pub fn execute(plan: &ExperimentPlan, cell: RunCell) -> Result<RunOutput> {
    let dataset = plan.load_dataset(cell)?;
    let config = plan.run_config(cell);
    let (result, linkage) = match plan.algorithm {
        Algorithm::Gomea => {
            let mut engine = Gomea::new(config, &dataset)?;
            let reason = loop {
                if let Some(r) = engine.stop_reason() {
                    break r;
                }
                engine.step();
            };
            let linkage = engine.last_linkage().cloned();
            (engine.into_result(reason), linkage)
        }
        Algorithm::Gp => (GpEngine::new(config, &dataset)?.run(), None),
    };
    let (test_x, test_y) = dataset.test_split();
    let best = result
        .best()
        .ok_or_else(|| Error::InvalidDataset("no finite solution was found".into()))?;
    let r2_test = (!test_y.is_empty()).then(|| best.r2(&test_x, &test_y).ok()).flatten();
    let spec = plan.synthetic_spec(cell);
    let recovered = match &spec {
        Some(s) => Some(recovery_check(&best.genotype, s, best.scaling)?),
        None => None,
    };
    let summary = RunSummary {
        algo: plan.algorithm,
        config: cell.grid.to_string(),
        trees: cell.grid.trees,
        depth: cell.grid.depth,
        population: cell.population,
        repetition: cell.repetition,
        seed: plan.run_seed(cell),
        data_seed: spec.map(|s| s.seed),
        r2_train: result.best_r2(),
        r2_test,
        recovered,
        usage: best.stats,
        evaluations: result.evaluations,
        generations: result.generations,
        stop_reason: result.stop_reason,
        wall_seconds: result.elapsed_seconds,
        expression: result.best_infix(),
    };
    Ok(RunOutput {
        result,
        dataset,
        linkage,
        summary,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes `generations.jsonl`, `front.csv`, `best.txt`, `summary.json` and,
/// when requested, the last linkage model under `linkage/`.
pub fn write_artifacts(plan: &ExperimentPlan, out: &RunOutput, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let path = dir.join("generations.jsonl");
    let mut file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
    for log in &out.result.logs {
        let line = serde_json::to_string(log).map_err(|e| Error::Format {
            path: path.clone(),
            message: e.to_string(),
        })?;
        writeln!(file, "{line}").map_err(|e| Error::io(&path, e))?;
    }

    let path = dir.join("front.csv");
    let (tx, ty) = out.dataset.test_split();
    let mut w = csv::Writer::from_path(&path).map_err(|e| Error::Format {
        path: path.clone(),
        message: e.to_string(),
    })?;
    let fmt = |e: csv::Error| Error::Format {
        path: path.clone(),
        message: e.to_string(),
    };
    w.write_record(["size", "r2_train", "r2_test", "expression"]).map_err(fmt)?;
    for p in out.result.front(Some((&tx, &ty))) {
        let test = p.r2_test.map(|v| v.to_string()).unwrap_or_default();
        w.write_record([p.size.to_string(), p.r2_train.to_string(), test, p.expression]).map_err(fmt)?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;

    write_file(&dir.join("best.txt"), &format!("{}\n", out.summary.expression))?;
    let json = serde_json::to_string_pretty(&out.summary).map_err(|e| Error::Format {
        path: dir.join("summary.json"),
        message: e.to_string(),
    })?;
    write_file(&dir.join("summary.json"), &format!("{json}\n"))?;

    if plan.dump_linkage {
        if let Some(model) = &out.linkage {
            model.dump_csv(&dir.join("linkage"))?;
        }
    }
    Ok(())
}

/// Runs the first cell of the plan and writes its artifacts to `plan.out`.
pub fn cmd_run(plan: &ExperimentPlan) -> Result<RunSummary> {
    plan.validate()?;
    let cell = plan.cells()[0];
    let out = execute(plan, cell)?;
    write_artifacts(plan, &out, &plan.out)?;
    Ok(out.summary)
}
