use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::{generate_synthetic, load_csv, Dataset, SyntheticSpec};
use crate::error::{Error, Result};
use crate::gomea::{RunConfig, TerminalPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[default]
    Gomea,
    Gp,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Gomea => "gomea",
            Algorithm::Gp => "gp",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gomea" => Ok(Algorithm::Gomea),
            "gp" => Ok(Algorithm::Gp),
            other => Err(Error::InvalidConfig(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Template configuration written `DEPTHxTREES`, e.g. `4x4` or `7x1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridCell {
    pub depth: usize,
    pub trees: usize,
}

impl fmt::Display for GridCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.depth, self.trees)
    }
}

impl FromStr for GridCell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("grid cell `{s}` is not DEPTHxTREES"));
        let (d, t) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
        Ok(GridCell {
            depth: d.parse().map_err(|_| bad())?,
            trees: t.parse().map_err(|_| bad())?,
        })
    }
}

impl Serialize for GridCell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GridCell {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `4x4,7x1`.
pub fn parse_grid(text: &str) -> Result<Vec<GridCell>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

/// An experiment: one algorithm on one data source over a grid of template
/// configurations, population sizes and repetitions.
///
/// Loaded from a flat TOML file, e.g.
///
/// ```toml
/// algorithm = "gomea"
/// synthetic = 2
/// grid = ["4x4", "7x1"]
/// populations = [1024]
/// repetitions = 10
/// budget_seconds = 600
/// out = "results/recovery"
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentPlan {
    pub algorithm: Algorithm,
    /// CSV file with a header row.
    pub dataset: Option<PathBuf>,
    pub target: String,
    pub train_fraction: f64,
    pub split_seed: u64,
    /// Synthetic benchmark id (1..=5), used when no CSV is given.
    pub synthetic: Option<u8>,
    /// Seed of the synthetic data of repetition 0; repetition `r` uses `data_seed + r`.
    pub data_seed: u64,
    pub samples: usize,
    pub grid: Vec<GridCell>,
    pub populations: Vec<usize>,
    pub repetitions: usize,
    /// Run seed of repetition 0; repetition `r` uses `seed + r`.
    pub seed: u64,
    pub budget_seconds: Option<f64>,
    pub budget_generations: Option<usize>,
    /// Defaults to on for CSV data and off for synthetic data.
    pub coefficients: Option<bool>,
    /// Defaults to on for CSV data and off for synthetic data.
    pub linear_scaling: Option<bool>,
    pub terminal_policy: TerminalPolicy,
    pub batch_max: usize,
    pub out: PathBuf,
    pub dump_linkage: bool,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            algorithm: Algorithm::Gomea,
            dataset: None,
            target: "y".into(),
            train_fraction: 0.75,
            split_seed: 0,
            synthetic: None,
            data_seed: 0,
            samples: crate::data::synthetic::DEFAULT_SAMPLES,
            grid: vec![GridCell { depth: 4, trees: 4 }],
            populations: vec![1024],
            repetitions: 1,
            seed: 0,
            budget_seconds: None,
            budget_generations: None,
            coefficients: None,
            linear_scaling: None,
            terminal_policy: TerminalPolicy::Full,
            batch_max: 2048,
            out: PathBuf::from("out"),
            dump_linkage: false,
        }
    }
}

/// One run of a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunCell {
    pub grid: GridCell,
    pub population: usize,
    pub repetition: usize,
}

impl ExperimentPlan {
    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::InvalidConfig("the grid is empty".into()));
        }
        if self.populations.is_empty() {
            return Err(Error::InvalidConfig("no population sizes given".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::InvalidConfig("repetitions must be at least 1".into()));
        }
        match (&self.dataset, self.synthetic) {
            (None, None) => return Err(Error::InvalidConfig("give a CSV dataset or a synthetic id".into())),
            (Some(_), Some(_)) => {
                return Err(Error::InvalidConfig("give either a CSV dataset or a synthetic id, not both".into()))
            }
            (None, Some(id)) => {
                crate::data::synthetic::n_features(id)?;
            }
            (Some(path), None) => {
                if !path.is_file() {
                    return Err(Error::io(
                        path,
                        std::io::Error::new(std::io::ErrorKind::NotFound, "dataset file not found"),
                    ));
                }
            }
        }
        for cell in self.cells() {
            self.run_config(cell).validate()?;
        }
        Ok(())
    }

    pub fn is_synthetic(&self) -> bool {
        self.dataset.is_none() && self.synthetic.is_some()
    }

    /// Every run in grid-major, then population, then repetition order.
    pub fn cells(&self) -> Vec<RunCell> {
        let mut cells = Vec::new();
        for &grid in &self.grid {
            for &population in &self.populations {
                for repetition in 0..self.repetitions {
                    cells.push(RunCell {
                        grid,
                        population,
                        repetition,
                    });
                }
            }
        }
        cells
    }

    pub fn run_seed(&self, cell: RunCell) -> u64 {
        self.seed.wrapping_add(cell.repetition as u64)
    }

    pub fn run_config(&self, cell: RunCell) -> RunConfig {
        let synthetic = self.is_synthetic();
        let mut c = RunConfig::new(cell.grid.trees, cell.grid.depth, cell.population, self.run_seed(cell));
        c.coefficients = self.coefficients.unwrap_or(!synthetic);
        c.linear_scaling = self.linear_scaling.unwrap_or(!synthetic);
        c.terminal_policy = self.terminal_policy;
        c.max_batch = self.batch_max;
        c.time_budget = self.budget_seconds;
        c.max_generations = self.budget_generations;
        c
    }

    pub fn synthetic_spec(&self, cell: RunCell) -> Option<SyntheticSpec> {
        self.synthetic.filter(|_| self.is_synthetic()).map(|id| SyntheticSpec {
            id,
            n_samples: self.samples,
            seed: self.data_seed.wrapping_add(cell.repetition as u64),
        })
    }

    pub fn load_dataset(&self, cell: RunCell) -> Result<Dataset> {
        match (&self.dataset, self.synthetic_spec(cell)) {
            (Some(path), _) => load_csv(path, &self.target, self.train_fraction, self.split_seed),
            (None, Some(spec)) => generate_synthetic(&spec),
            (None, None) => Err(Error::InvalidConfig("give a CSV dataset or a synthetic id".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_cells_parse() {
        let g = parse_grid("4x4, 7x1").unwrap();
        assert_eq!(g, [GridCell { depth: 4, trees: 4 }, GridCell { depth: 7, trees: 1 }]);
        assert_eq!(g[1].to_string(), "7x1");
        assert!(parse_grid("4by4").is_err());
    }

    #[test]
    fn toml_plan() {
        let p: ExperimentPlan = toml::from_str(
            "algorithm = \"gp\"\nsynthetic = 2\ngrid = [\"4x4\", \"7x1\"]\npopulations = [64, 128]\nrepetitions = 3\n",
        )
        .unwrap();
        assert_eq!(p.algorithm, Algorithm::Gp);
        assert_eq!(p.cells().len(), 12);
        assert!(p.validate().is_ok());
        let c = p.run_config(p.cells()[4]);
        assert_eq!((c.n_trees, c.tree_depth, c.population_size, c.seed), (4, 4, 128, 1));
        assert!(!c.coefficients && !c.linear_scaling);
    }

    #[test]
    fn invalid_plans() {
        let p = ExperimentPlan::default();
        assert!(p.validate().is_err());
        let p = ExperimentPlan {
            dataset: Some("/no/such/file.csv".into()),
            ..ExperimentPlan::default()
        };
        let err = p.validate().unwrap_err().to_string();
        assert!(err.contains("/no/such/file.csv"), "{err}");
        let p = ExperimentPlan {
            synthetic: Some(2),
            repetitions: 0,
            ..ExperimentPlan::default()
        };
        assert!(p.validate().is_err());
    }
}
