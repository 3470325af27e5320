use serde::Serialize;

use super::fitness::{apply_scaling, FitnessEvaluator};
use super::mixing::Individual;
use crate::archive::ParetoArchive;
use crate::data::{r_squared, Matrix};
use crate::error::Result;
use crate::expr::{to_infix_named, Evaluator, Genotype, UsageStats};

/// An archived expression with its scaling and usage statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub genotype: Genotype,
    pub scaling: Option<(f64, f64)>,
    pub stats: UsageStats,
}

/// Elitist archive of solutions; size is the de-duplicated node count.
pub type Archive = ParetoArchive<Solution>;

impl Solution {
    pub fn new(genotype: Genotype, scaling: Option<(f64, f64)>) -> Self {
        let stats = UsageStats::of(&genotype);
        Solution {
            genotype,
            scaling,
            stats,
        }
    }

    /// Infix text with subexpression definitions; a linear-scaling wrapper
    /// is written around the output line.
    pub fn infix(&self, feature_names: &[String]) -> String {
        let text = to_infix_named(&self.genotype, false, feature_names);
        match self.scaling {
            Some((a, b)) => {
                let (first, rest) = text.split_once('\n').map_or((text.as_str(), ""), |(f, r)| (f, r));
                let mut s = format!("{a} + {b} * ({first})");
                if !rest.is_empty() {
                    s.push('\n');
                    s.push_str(rest);
                }
                s
            }
            None => text,
        }
    }

    /// Scaled predictions.
    pub fn predict(&self, x: &Matrix) -> Result<Vec<f64>> {
        let mut p = Evaluator::new().evaluate(&self.genotype, x)?;
        apply_scaling(&mut p, self.scaling);
        Ok(p)
    }

    pub fn r2(&self, x: &Matrix, y: &[f64]) -> Result<f64> {
        r_squared(&self.predict(x)?, y)
    }
}

/// Offers `individual` to the archive with its full-training R² and
/// de-duplicated size.
pub fn offer(archive: &mut Archive, fitness: &mut FitnessEvaluator, individual: &Individual) -> bool {
    let r2 = fitness.r2_full(&individual.genotype, &individual.fitness);
    if !r2.is_finite() {
        return false;
    }
    let solution = Solution::new(individual.genotype.clone(), individual.fitness.scaling);
    let size = solution.stats.nodes_deduplicated as f64;
    archive.try_insert(size, r2, solution)
}

/// Point on the exported trade-off front.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrontPoint {
    pub size: usize,
    pub r2_train: f64,
    pub r2_test: Option<f64>,
    pub expression: String,
}
