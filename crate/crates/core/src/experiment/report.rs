use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use serde::Serialize;

use super::sweep::SweepRow;
use crate::error::{Error, Result};

/// Mean and standard deviation (`n - 1` denominator; 0 for a single value).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        Some(MeanStd { mean, std })
    }
}

/// Aggregate of the successful runs of one (algorithm, config, population).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub algo: String,
    pub config: String,
    pub population: usize,
    pub runs: usize,
    pub failures: usize,
    pub r2_train: Option<MeanStd>,
    pub r2_test: Option<MeanStd>,
    pub recovery_rate: Option<f64>,
    pub nodes: Option<MeanStd>,
    pub nodes_deduplicated: Option<MeanStd>,
    pub subexpr_used: Option<MeanStd>,
    pub subexpr_reused: Option<MeanStd>,
    pub subexpr_reused_as_function: Option<MeanStd>,
    pub evaluations: Option<MeanStd>,
    pub generations: Option<MeanStd>,
}

pub fn read_sweep(path: &Path) -> Result<Vec<SweepRow>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Format {
            path: path.to_path_buf(),
            message: format!("{other:?}"),
        },
    })?;
    reader
        .deserialize()
        .enumerate()
        .map(|(i, row)| {
            row.map_err(|e| Error::Format {
                path: path.to_path_buf(),
                message: format!("row {}: does not match the sweep schema: {e}", i + 2),
            })
        })
        .collect()
}

/// Groups rows by algorithm, configuration and population size.
pub fn aggregate(rows: &[SweepRow]) -> Vec<ReportRow> {
    let mut groups: BTreeMap<(String, String, usize), Vec<&SweepRow>> = BTreeMap::new();
    for r in rows {
        groups
            .entry((r.algo.clone(), r.config.clone(), r.population))
            .or_default()
            .push(r);
    }
    groups
        .into_iter()
        .map(|((algo, config, population), rows)| {
            let ok: Vec<&SweepRow> = rows.iter().copied().filter(|r| r.error.is_empty()).collect();
            let stat = |f: &dyn Fn(&SweepRow) -> Option<f64>| {
                MeanStd::of(&ok.iter().filter_map(|r| f(r)).collect::<Vec<_>>())
            };
            let verdicts: Vec<bool> = ok.iter().filter_map(|r| r.recovered).collect();
            ReportRow {
                algo,
                config,
                population,
                runs: ok.len(),
                failures: rows.len() - ok.len(),
                r2_train: stat(&|r| r.r2_train),
                r2_test: stat(&|r| r.r2_test),
                recovery_rate: (!verdicts.is_empty())
                    .then(|| verdicts.iter().filter(|&&v| v).count() as f64 / verdicts.len() as f64),
                nodes: stat(&|r| r.nodes.map(|v| v as f64)),
                nodes_deduplicated: stat(&|r| r.nodes_deduplicated.map(|v| v as f64)),
                subexpr_used: stat(&|r| r.subexpr_used.map(|v| v as f64)),
                subexpr_reused: stat(&|r| r.subexpr_reused.map(|v| v as f64)),
                subexpr_reused_as_function: stat(&|r| r.subexpr_reused_as_function.map(|v| v as f64)),
                evaluations: stat(&|r| r.evaluations.map(|v| v as f64)),
                generations: stat(&|r| r.generations.map(|v| v as f64)),
            }
        })
        .collect()
}

fn cell(m: Option<MeanStd>, precision: usize) -> String {
    m.map_or_else(|| "-".into(), |m| format!("{:.p$} ± {:.p$}", m.mean, m.std, p = precision))
}

/// Two text tables: accuracy and size per configuration, then
/// subexpression usage (used / re-used / re-used as function).
pub fn render(rows: &[ReportRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<6} {:<7} {:>6} {:>5} {:>22} {:>22} {:>9} {:>18} {:>18}",
        "algo", "config", "pop", "runs", "r2_train", "r2_test", "recovered", "nodes", "dedup nodes"
    );
    for r in rows {
        let rate = r.recovery_rate.map_or_else(|| "-".into(), |v| format!("{v:.2}"));
        let _ = writeln!(
            s,
            "{:<6} {:<7} {:>6} {:>5} {:>22} {:>22} {:>9} {:>18} {:>18}",
            r.algo,
            r.config,
            r.population,
            r.runs,
            cell(r.r2_train, 6),
            cell(r.r2_test, 6),
            rate,
            cell(r.nodes, 1),
            cell(r.nodes_deduplicated, 1)
        );
    }
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "{:<6} {:<7} {:>6} {:>14} {:>14} {:>20}",
        "algo", "config", "pop", "used", "re-used", "re-used as function"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<6} {:<7} {:>6} {:>14} {:>14} {:>20}",
            r.algo,
            r.config,
            r.population,
            cell(r.subexpr_used, 2),
            cell(r.subexpr_reused, 2),
            cell(r.subexpr_reused_as_function, 2)
        );
    }
    s
}

/// Reads a sweep CSV and renders the report tables.
pub fn cmd_report(path: &Path) -> Result<String> {
    Ok(render(&aggregate(&read_sweep(path)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(r2: f64, recovered: Option<bool>) -> SweepRow {
        SweepRow {
            algo: "gomea".into(),
            config: "4x4".into(),
            trees: 4,
            depth: 4,
            population: 64,
            repetition: 0,
            seed: 0,
            r2_train: Some(r2),
            r2_test: None,
            recovered,
            nodes: Some(10),
            nodes_deduplicated: Some(8),
            nodes_expanded: Some(12),
            subexpr_used: Some(2),
            subexpr_reused: Some(1),
            subexpr_reused_as_function: Some(0),
            evaluations: Some(100),
            generations: Some(3),
            wall_seconds: Some(0.1),
            error: String::new(),
        }
    }

    #[test]
    fn single_row_has_zero_std() {
        let r = aggregate(&[row(0.9, Some(true))]);
        assert_eq!(r[0].r2_train.unwrap().std, 0.0);
        assert_eq!(r[0].recovery_rate, Some(1.0));
    }

    #[test]
    fn means_and_rates() {
        let r = aggregate(&[row(0.5, Some(true)), row(1.0, Some(false)), row(0.0, Some(true))]);
        assert_eq!(r[0].r2_train.unwrap().mean, 0.5);
        assert!((r[0].recovery_rate.unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let text = render(&r);
        assert!(text.contains("used") && text.contains("re-used as function"));
    }
}
