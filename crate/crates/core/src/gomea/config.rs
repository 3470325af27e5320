use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{BinaryOp, UnaryOp, COEFFICIENT_BINS, MAX_DEPTH};

/// Terminal set of the callable trees `1..n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TerminalPolicy {
    /// Features, coefficients and argument nodes.
    #[default]
    Full,
    /// Argument nodes only. Tree 0 and the output tree keep the full set.
    Koza,
}

impl std::str::FromStr for TerminalPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(TerminalPolicy::Full),
            "koza" => Ok(TerminalPolicy::Koza),
            other => Err(Error::InvalidConfig(format!("unknown terminal policy `{other}`"))),
        }
    }
}

/// When coefficient mutation runs during mixing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientSchedule {
    /// After every mixing step that evaluated the individual.
    #[default]
    PerStep,
    /// Once after the whole pass over the family of subsets.
    PerPass,
}

/// Settings of one evolutionary run. Field defaults follow the reference
/// settings: 25 coefficient bins, grow terminal and coefficient
/// probabilities of one half, step 0.1 decayed tenfold after 5 generations
/// without archive change, batches of at most 2048 rows, stop after 100
/// stagnant generations or when R² reaches 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n_trees: usize,
    pub tree_depth: usize,
    pub population_size: usize,
    pub seed: u64,
    pub binary_ops: Vec<BinaryOp>,
    pub unary_ops: Vec<UnaryOp>,
    /// Coefficient terminals, sampled uniformly over the training target range.
    pub coefficients: bool,
    pub p_terminal_grow: f64,
    pub p_coefficient: f64,
    pub n_coefficient_bins: u8,
    pub coeff_mutation_rate: f64,
    pub coeff_step_init: f64,
    pub step_decay_factor: f64,
    pub step_decay_patience: usize,
    pub coeff_schedule: CoefficientSchedule,
    pub max_batch: usize,
    /// Wall-clock budget in seconds.
    pub time_budget: Option<f64>,
    pub max_generations: Option<usize>,
    pub stagnation_patience: usize,
    pub linear_scaling: bool,
    pub terminal_policy: TerminalPolicy,
    pub r2_stop: f64,
    pub archive_capacity: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_trees: 4,
            tree_depth: 4,
            population_size: 1024,
            seed: 0,
            binary_ops: BinaryOp::ALL.to_vec(),
            unary_ops: UnaryOp::ALL.to_vec(),
            coefficients: true,
            p_terminal_grow: 0.5,
            p_coefficient: 0.5,
            n_coefficient_bins: COEFFICIENT_BINS,
            coeff_mutation_rate: 1.0,
            coeff_step_init: 0.1,
            step_decay_factor: 10.0,
            step_decay_patience: 5,
            coeff_schedule: CoefficientSchedule::PerStep,
            max_batch: 2048,
            time_budget: None,
            max_generations: None,
            stagnation_patience: 100,
            linear_scaling: false,
            terminal_policy: TerminalPolicy::Full,
            r2_stop: 1.0,
            archive_capacity: 100,
        }
    }
}

impl RunConfig {
    pub fn new(n_trees: usize, tree_depth: usize, population_size: usize, seed: u64) -> Self {
        RunConfig {
            n_trees,
            tree_depth,
            population_size,
            seed,
            ..RunConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.n_trees == 0 {
            return bad("at least one tree is required".into());
        }
        if self.tree_depth > MAX_DEPTH {
            return bad(format!("tree depth {} exceeds {MAX_DEPTH}", self.tree_depth));
        }
        if self.population_size < 2 {
            return bad(format!("population size {} is below 2", self.population_size));
        }
        for (name, p) in [
            ("p_terminal_grow", self.p_terminal_grow),
            ("p_coefficient", self.p_coefficient),
            ("coeff_mutation_rate", self.coeff_mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} = {p} is not a probability"));
            }
        }
        if self.n_coefficient_bins == 0 || self.n_coefficient_bins > COEFFICIENT_BINS {
            return bad(format!("coefficient bins must be in 1..={COEFFICIENT_BINS}"));
        }
        if !(self.coeff_step_init > 0.0) || !(self.step_decay_factor >= 1.0) {
            return bad("coefficient step must be positive and the decay factor at least 1".into());
        }
        if self.max_batch == 0 {
            return bad("max_batch must be positive".into());
        }
        if self.time_budget.is_some_and(|t| !(t >= 0.0)) {
            return bad("time budget must be non-negative".into());
        }
        if self.archive_capacity == 0 {
            return bad("archive capacity must be positive".into());
        }
        if self.binary_ops.is_empty() && self.unary_ops.is_empty() && self.tree_depth > 0 {
            return bad("the operator set is empty".into());
        }
        Ok(())
    }
}
