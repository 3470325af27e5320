//! The generational loop and the bookkeeping shared with the GP baseline.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::binning::assign_coefficient_bins;
use super::config::RunConfig;
use super::fitness::FitnessEvaluator;
use super::init::{initialize_population, samplers, SymbolSampler};
use super::mixing::{gom, Individual, MixContext, MixingStats};
use super::solution::{offer, Archive, FrontPoint, Solution};
use crate::data::{Dataset, Matrix};
use crate::error::{Error, Result};
use crate::expr::{Activity, Genotype};
use crate::linkage::{estimate_population_mi, LinkageModel, MiMatrix};

/// Why a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    TimeBudget,
    Stagnation,
    R2Reached,
    GenerationLimit,
}

/// One line of the per-generation log. Generation 0 is the initial population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationLog {
    pub generation: usize,
    /// Lowest batch MSE in the population.
    pub best_mse: f64,
    /// Mean batch MSE over individuals with finite error.
    pub mean_mse: f64,
    /// Highest full-training R² in the archive.
    pub best_r2: f64,
    /// Evaluations spent in this generation.
    pub evaluations: u64,
    pub total_evaluations: u64,
    /// Active nodes of the archive's best entry.
    pub nodes: usize,
    pub nodes_deduplicated: usize,
    pub nodes_expanded: usize,
    pub step_size: f64,
    pub archive_size: usize,
    pub archive_changed: bool,
    pub identical_swaps: u64,
    pub intron_skips: u64,
    pub accepted: u64,
    pub reverted: u64,
    pub elapsed_seconds: f64,
}

/// Outcome of a run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub config: RunConfig,
    pub population: Vec<Individual>,
    pub archive: Archive,
    pub logs: Vec<GenerationLog>,
    pub stop_reason: StopReason,
    pub generations: usize,
    pub evaluations: u64,
    pub elapsed_seconds: f64,
    pub feature_names: Vec<String>,
}

impl RunResult {
    /// Archive entry with the highest training R².
    pub fn best(&self) -> Option<&Solution> {
        self.archive.best().map(|e| &e.item)
    }

    pub fn best_r2(&self) -> f64 {
        self.archive.best().map_or(f64::NEG_INFINITY, |e| e.r2)
    }

    /// Infix text of [`RunResult::best`] with subexpression definitions.
    pub fn best_infix(&self) -> String {
        self.best().map_or_else(String::new, |s| s.infix(&self.feature_names))
    }

    /// Archive front with test R² where a test split is given.
    pub fn front(&self, test: Option<(&Matrix, &[f64])>) -> Vec<FrontPoint> {
        self.archive
            .front()
            .iter()
            .map(|e| FrontPoint {
                size: e.size as usize,
                r2_train: e.r2,
                r2_test: test
                    .filter(|(_, y)| !y.is_empty())
                    .and_then(|(x, y)| e.item.r2(x, y).ok()),
                expression: e.item.infix(&self.feature_names),
            })
            .collect()
    }
}

/// State shared by the GOMEA and GP loops.
#[derive(Debug)]
pub(crate) struct RunCore {
    pub config: RunConfig,
    pub rng: ChaCha8Rng,
    pub fitness: FitnessEvaluator,
    pub samplers: Vec<SymbolSampler>,
    pub population: Vec<Individual>,
    pub archive: Archive,
    pub generation: usize,
    pub step_size: f64,
    pub stagnant: usize,
    decay_counter: usize,
    pub logs: Vec<GenerationLog>,
    pub total_evaluations: u64,
    start: Instant,
    pub feature_names: Vec<String>,
}

impl RunCore {
    pub fn new(config: RunConfig, dataset: &Dataset, initial: Option<Vec<Genotype>>) -> Result<Self> {
        config.validate()?;
        if dataset.n_features() == 0 || dataset.train_rows().is_empty() {
            return Err(Error::InvalidDataset("dataset needs at least one feature and one training row".into()));
        }
        let start = Instant::now();
        let (x, y) = dataset.train_split();
        let lo = y.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let samplers = samplers(&config, dataset.n_features(), (lo, hi))?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut fitness = FitnessEvaluator::new(x, y, config.linear_scaling, config.max_batch)?;
        fitness.resample(&mut rng);

        let genotypes = match initial {
            Some(g) => {
                if g.len() < 2 {
                    return Err(Error::EmptyPopulation);
                }
                for ind in &g {
                    if ind.n_trees() != config.n_trees || ind.trees().iter().any(|t| t.depth() != config.tree_depth) {
                        return Err(Error::InvalidConfig(
                            "initial genotype does not match the configured trees and depth".into(),
                        ));
                    }
                    if ind.max_feature().is_some_and(|k| k as usize >= dataset.n_features()) {
                        return Err(Error::InvalidConfig("initial genotype references a missing feature".into()));
                    }
                }
                g
            }
            None => initialize_population(&config, &samplers, &mut rng)?,
        };
        let mut archive = Archive::new(config.archive_capacity);
        let population: Vec<Individual> = genotypes
            .into_iter()
            .map(|genotype| {
                let fitness = fitness.evaluate(&genotype, &Activity::of(&genotype));
                Individual { genotype, fitness }
            })
            .collect();
        for ind in &population {
            offer(&mut archive, &mut fitness, ind);
        }
        let step_size = config.coeff_step_init;
        let mut core = RunCore {
            config,
            rng,
            fitness,
            samplers,
            population,
            archive,
            generation: 0,
            step_size,
            stagnant: 0,
            decay_counter: 0,
            logs: Vec::new(),
            total_evaluations: 0,
            start,
            feature_names: dataset.feature_names().to_vec(),
        };
        let evaluations = core.fitness.evaluations();
        core.log(evaluations, MixingStats::default(), true);
        Ok(core)
    }

    pub fn elapsed(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }

    pub fn out_of_time(&self) -> bool {
        self.config.time_budget.is_some_and(|b| self.elapsed() >= b)
    }

    /// Draws the generation's batch and re-scores the parents on it.
    /// Returns the evaluations spent.
    pub fn rebatch(&mut self) -> u64 {
        if !self.fitness.resample(&mut self.rng) {
            return 0;
        }
        for ind in &mut self.population {
            ind.fitness = self.fitness.evaluate(&ind.genotype, &Activity::of(&ind.genotype));
        }
        self.population.len() as u64
    }

    /// Stagnation and step-decay bookkeeping, then the generation's log line.
    pub fn finish_generation(&mut self, changes_before: u64, evaluations: u64, stats: MixingStats) {
        self.generation += 1;
        let changed = self.archive.changes() != changes_before;
        if changed {
            self.stagnant = 0;
            self.decay_counter = 0;
        } else {
            self.stagnant += 1;
            self.decay_counter += 1;
            if self.decay_counter >= self.config.step_decay_patience {
                self.step_size /= self.config.step_decay_factor;
                self.decay_counter = 0;
            }
        }
        self.log(evaluations, stats, changed);
    }

    fn log(&mut self, evaluations: u64, stats: MixingStats, changed: bool) {
        self.total_evaluations += evaluations;
        let best_mse = self.population.iter().map(|i| i.fitness.mse).fold(f64::INFINITY, f64::min);
        let finite: Vec<f64> = self
            .population
            .iter()
            .map(|i| i.fitness.mse)
            .filter(|m| m.is_finite())
            .collect();
        let mean_mse = if finite.is_empty() {
            f64::INFINITY
        } else {
            finite.iter().sum::<f64>() / finite.len() as f64
        };
        let best = self.archive.best();
        let s = best.map(|e| e.item.stats).unwrap_or_default();
        self.logs.push(GenerationLog {
            generation: self.generation,
            best_mse,
            mean_mse,
            best_r2: best.map_or(f64::NEG_INFINITY, |e| e.r2),
            evaluations,
            total_evaluations: self.total_evaluations,
            nodes: s.nodes_total,
            nodes_deduplicated: s.nodes_deduplicated,
            nodes_expanded: s.nodes_expanded,
            step_size: self.step_size,
            archive_size: self.archive.len(),
            archive_changed: changed,
            identical_swaps: stats.identical_swaps,
            intron_skips: stats.intron_skips,
            accepted: stats.accepted,
            reverted: stats.reverted,
            elapsed_seconds: self.elapsed(),
        });
    }

    /// Limits checked before each generation.
    pub fn limit_reached(&self) -> Option<StopReason> {
        if self.config.max_generations.is_some_and(|g| self.generation >= g) {
            Some(StopReason::GenerationLimit)
        } else if self.out_of_time() {
            Some(StopReason::TimeBudget)
        } else if self.stagnant >= self.config.stagnation_patience {
            Some(StopReason::Stagnation)
        } else {
            None
        }
    }

    pub fn r2_reached(&self) -> bool {
        self.archive.best().is_some_and(|e| e.r2 >= self.config.r2_stop)
    }

    pub fn into_result(self, stop_reason: StopReason) -> RunResult {
        RunResult {
            elapsed_seconds: self.elapsed(),
            config: self.config,
            population: self.population,
            archive: self.archive,
            logs: self.logs,
            stop_reason,
            generations: self.generation,
            evaluations: self.total_evaluations,
            feature_names: self.feature_names,
        }
    }
}

/// Runs the loop of an engine until a stopping rule fires: generation cap,
/// time budget or archive stagnation (checked before each generation), or
/// R² reaching the target (checked after each generation).
pub(crate) fn drive(core: &mut RunCore, mut step: impl FnMut(&mut RunCore)) -> StopReason {
    loop {
        if let Some(reason) = core.limit_reached() {
            return reason;
        }
        step(core);
        if core.r2_reached() {
            return StopReason::R2Reached;
        }
    }
}

/// Modular GP-GOMEA.
///
/// ```no_run
/// use modular_gomea::data::{generate_synthetic, SyntheticSpec};
/// use modular_gomea::gomea::{Gomea, RunConfig};
///
/// let data = generate_synthetic(&SyntheticSpec::new(4, 1)).unwrap();
/// let mut config = RunConfig::new(3, 3, 256, 1);
/// config.coefficients = false;
/// let mut engine = Gomea::new(config, &data).unwrap();
/// let log = engine.step();
/// println!("{} evaluations, best R² {}", log.evaluations, log.best_r2);
/// ```
#[derive(Debug)]
pub struct Gomea {
    core: RunCore,
    bias: Vec<MiMatrix>,
    last_linkage: Option<LinkageModel>,
    last_stats: MixingStats,
}

impl Gomea {
    pub fn new(config: RunConfig, dataset: &Dataset) -> Result<Self> {
        Self::build(config, dataset, None)
    }

    /// Starts from the given genotypes instead of a random population.
    pub fn with_population(config: RunConfig, dataset: &Dataset, population: Vec<Genotype>) -> Result<Self> {
        Self::build(config, dataset, Some(population))
    }

    fn build(config: RunConfig, dataset: &Dataset, initial: Option<Vec<Genotype>>) -> Result<Self> {
        let mut core = RunCore::new(config, dataset, initial)?;
        let mut genotypes: Vec<Genotype> = core.population.iter().map(|i| i.genotype.clone()).collect();
        assign_coefficient_bins(&mut genotypes, core.config.n_coefficient_bins);
        for (ind, g) in core.population.iter_mut().zip(genotypes) {
            ind.genotype = g;
        }
        let genotypes: Vec<Genotype> = core.population.iter().map(|i| i.genotype.clone()).collect();
        let bias = estimate_population_mi(&genotypes)?;
        Ok(Gomea {
            core,
            bias,
            last_linkage: None,
            last_stats: MixingStats::default(),
        })
    }

    /// One generation: rebinning, linkage learning and one GOM offspring
    /// per parent, replacing the population.
    pub fn step(&mut self) -> &GenerationLog {
        let core = &mut self.core;
        let changes_before = core.archive.changes();
        let mut evaluations = core.rebatch();

        let mut genotypes: Vec<Genotype> = core.population.iter().map(|i| i.genotype.clone()).collect();
        if core.config.coefficients {
            assign_coefficient_bins(&mut genotypes, core.config.n_coefficient_bins);
            for (ind, g) in core.population.iter_mut().zip(&genotypes) {
                ind.genotype = g.clone();
            }
        }
        let linkage =
            LinkageModel::learn(&genotypes, &self.bias, &mut core.rng).expect("population shape is fixed during a run");
        drop(genotypes);

        let snapshot = std::mem::take(&mut core.population);
        let mut offspring = Vec::with_capacity(snapshot.len());
        let mut stats = MixingStats::default();
        for parent in &snapshot {
            if core.out_of_time() {
                offspring.push(parent.clone());
                continue;
            }
            let mut ctx = MixContext {
                config: &core.config,
                fitness: &mut core.fitness,
                archive: &mut core.archive,
                step_size: core.step_size,
                stats,
            };
            let child = gom(parent, &snapshot, &linkage.flat, &mut ctx, &mut core.rng);
            stats = ctx.stats;
            offspring.push(child);
        }
        evaluations += stats.evaluations;
        core.population = offspring;
        core.finish_generation(changes_before, evaluations, stats);
        self.last_linkage = Some(linkage);
        self.last_stats = stats;
        self.core.logs.last().expect("a log line per generation")
    }

    /// Runs until a stopping rule fires.
    pub fn run(mut self) -> RunResult {
        let reason = loop {
            if let Some(r) = self.core.limit_reached() {
                break r;
            }
            self.step();
            if self.core.r2_reached() {
                break StopReason::R2Reached;
            }
        };
        self.core.into_result(reason)
    }

    pub fn population(&self) -> &[Individual] {
        &self.core.population
    }

    pub fn archive(&self) -> &Archive {
        &self.core.archive
    }

    pub fn logs(&self) -> &[GenerationLog] {
        &self.core.logs
    }

    pub fn generation(&self) -> usize {
        self.core.generation
    }

    pub fn step_size(&self) -> f64 {
        self.core.step_size
    }

    /// MI matrices of the initial population, subtracted every generation.
    pub fn bias(&self) -> &[MiMatrix] {
        &self.bias
    }

    /// Linkage model learned in the last generation.
    pub fn last_linkage(&self) -> Option<&LinkageModel> {
        self.last_linkage.as_ref()
    }

    /// Mixing counters of the last generation.
    pub fn last_stats(&self) -> &MixingStats {
        &self.last_stats
    }

    /// Stopping rule that would end the run now, if any.
    pub fn stop_reason(&self) -> Option<StopReason> {
        if self.core.generation > 0 && self.core.r2_reached() {
            return Some(StopReason::R2Reached);
        }
        self.core.limit_reached()
    }

    pub fn into_result(self, reason: StopReason) -> RunResult {
        self.core.into_result(reason)
    }
}
