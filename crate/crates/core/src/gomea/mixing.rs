//! Gene-pool Optimal Mixing and coefficient mutation.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::config::{CoefficientSchedule, RunConfig};
use super::fitness::{FitnessEvaluator, FitnessRecord};
use super::solution::{offer, Archive};
use crate::expr::{Activity, Genotype, Symbol};
use crate::linkage::FlatFos;

/// A genotype with its batch fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genotype: Genotype,
    pub fitness: FitnessRecord,
}

/// Counters of one generation of mixing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MixingStats {
    pub evaluations: u64,
    /// Steps where the donor held the same symbols at every locus.
    pub identical_swaps: u64,
    /// Steps that changed symbols but no active one, kept without evaluation.
    pub intron_skips: u64,
    pub accepted: u64,
    pub reverted: u64,
    pub coefficient_accepted: u64,
    pub coefficient_reverted: u64,
    /// Largest `new - old` batch MSE over accepted evaluated steps.
    pub max_accepted_increase: f64,
}

/// Shared state of one generation of mixing.
pub struct MixContext<'a> {
    pub config: &'a RunConfig,
    pub fitness: &'a mut FitnessEvaluator,
    pub archive: &'a mut Archive,
    pub step_size: f64,
    pub stats: MixingStats,
}

impl MixContext<'_> {
    fn evaluate(&mut self, genotype: &Genotype, activity: &Activity, bound: f64, strict: bool) -> FitnessRecord {
        self.stats.evaluations += 1;
        self.fitness.evaluate_bounded(genotype, activity, bound, strict)
    }
}

/// Builds one offspring from `parent`.
///
/// The flattened family of subsets is visited in random order. For each
/// subset a donor is drawn uniformly from `snapshot` and its symbols at the
/// subset's loci (in the subset's tree) are copied into the offspring. If
/// no copied locus is active and semantically different, the copy is kept
/// without evaluation. Otherwise the offspring is evaluated and the change
/// kept iff the batch MSE does not increase; strict improvements are
/// offered to the archive.
pub fn gom<R: Rng + ?Sized>(
    parent: &Individual,
    snapshot: &[Individual],
    fos: &FlatFos,
    ctx: &mut MixContext<'_>,
    rng: &mut R,
) -> Individual {
    let mut child = parent.clone();
    let mut activity = Activity::of(&child.genotype);
    let mut order: Vec<usize> = (0..fos.len()).collect();
    order.shuffle(rng);
    let mut saved: Vec<Symbol> = Vec::new();

    for k in order {
        let subset = &fos.subsets[k];
        let t = subset.tree;
        let donor = &snapshot[rng.random_range(0..snapshot.len())].genotype;
        let mine = child.genotype.tree(t).nodes();
        let theirs = donor.tree(t).nodes();
        let mut differs = false;
        let mut meaningful = false;
        for &s in &subset.loci {
            if mine[s] != theirs[s] {
                differs = true;
                meaningful |= activity.is_active(t, s) && mine[s].differs_semantically(&theirs[s]);
            }
        }
        if !differs {
            ctx.stats.identical_swaps += 1;
            continue;
        }
        if !meaningful {
            // inactive copies leave every reachable mask unchanged
            child.genotype.copy_slots_from(donor, t, &subset.loci);
            ctx.stats.intron_skips += 1;
            continue;
        }

        saved.clear();
        saved.extend(subset.loci.iter().map(|&s| mine[s]));
        child.genotype.copy_slots_from(donor, t, &subset.loci);
        let new_activity = Activity::of(&child.genotype);
        let old = child.fitness.mse;
        let record = ctx.evaluate(&child.genotype, &new_activity, old, false);
        if record.mse <= old {
            if record.mse.is_finite() && old.is_finite() {
                ctx.stats.max_accepted_increase = ctx.stats.max_accepted_increase.max(record.mse - old);
            }
            child.fitness = record;
            activity = new_activity;
            ctx.stats.accepted += 1;
            if record.mse < old {
                offer(ctx.archive, ctx.fitness, &child);
            }
        } else {
            let nodes = child.genotype.tree_nodes_mut(t);
            for (&s, sym) in subset.loci.iter().zip(&saved) {
                nodes[s] = *sym;
            }
            ctx.stats.reverted += 1;
        }
        if ctx.config.coeff_schedule == CoefficientSchedule::PerStep {
            coefficient_mutation(&mut child, &activity, ctx, rng);
        }
    }
    if ctx.config.coeff_schedule == CoefficientSchedule::PerPass {
        coefficient_mutation(&mut child, &activity, ctx, rng);
    }
    child
}

/// Perturbs every coefficient (each with the configured rate) by
/// `c * (1 + step * z)`, or `c + step * z` when `|c| < 1e-10`, with `z`
/// standard normal. One evaluation decides for all of them: the changes are
/// kept only on strict MSE improvement. When no active coefficient
/// changed, the changes are kept without evaluation. Returns whether the
/// individual was evaluated.
pub fn coefficient_mutation<R: Rng + ?Sized>(
    individual: &mut Individual,
    activity: &Activity,
    ctx: &mut MixContext<'_>,
    rng: &mut R,
) -> bool {
    let rate = ctx.config.coeff_mutation_rate;
    let step = ctx.step_size;
    let mut saved: Vec<(usize, usize, Symbol)> = Vec::new();
    let mut active_changed = false;
    for t in 0..individual.genotype.n_trees() {
        let nodes = individual.genotype.tree_nodes_mut(t);
        for (s, sym) in nodes.iter_mut().enumerate() {
            if let Symbol::Coefficient { value, .. } = sym {
                if rate < 1.0 && !rng.random_bool(rate) {
                    continue;
                }
                let z: f64 = rng.sample(StandardNormal);
                let old = *value;
                *value = if old.abs() < 1e-10 { old + step * z } else { old * (1.0 + step * z) };
                saved.push((t, s, Symbol::Coefficient { value: old, bin: 0 }));
                active_changed |= activity.is_active(t, s);
            }
        }
    }
    if !active_changed {
        return false;
    }
    let record = ctx.evaluate(&individual.genotype, activity, individual.fitness.mse, true);
    if record.mse < individual.fitness.mse {
        individual.fitness = record;
        ctx.stats.coefficient_accepted += 1;
        offer(ctx.archive, ctx.fitness, individual);
    } else {
        for (t, s, old) in saved {
            if let (Symbol::Coefficient { value, .. }, Symbol::Coefficient { value: v, .. }) =
                (&mut individual.genotype.tree_nodes_mut(t)[s], old)
            {
                *value = v;
            }
        }
        ctx.stats.coefficient_reverted += 1;
    }
    true
}
