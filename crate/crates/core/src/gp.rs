//! Template-constrained GP on the multi-tree representation: uniform
//! multi-tree crossover, subtree transplant into a region of equal or
//! greater height, point mutation over a random mask and size-4
//! tournaments over parents and offspring.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::expr::{slot_depths, template_size, Activity, Genotype};
use crate::gomea::{drive, offer, GenerationLog, Individual, MixingStats, RunConfig, RunCore, RunResult, SymbolSampler};

pub const TOURNAMENT_SIZE: usize = 4;

fn check_shape(a: &Genotype, b: &Genotype) -> Result<()> {
    if a.same_shape(b) {
        Ok(())
    } else {
        Err(Error::InvalidGenotype("genotypes differ in tree count or depth".into()))
    }
}

/// Each tree is replaced by the donor's with probability one half.
pub fn uniform_multitree_crossover<R: Rng + ?Sized>(
    individual: &Genotype,
    donor: &Genotype,
    rng: &mut R,
) -> Result<Genotype> {
    check_shape(individual, donor)?;
    let mut child = individual.clone();
    for t in 0..child.n_trees() {
        if rng.random_bool(0.5) {
            child.replace_tree(t, donor.tree(t).clone());
        }
    }
    Ok(child)
}

/// Copies the donor subtree rooted at `donor_slot` of tree `tree` over the
/// region rooted at `target_slot`, following identical child paths. The
/// donor slot must lie at least as deep as the target slot so the subtree
/// fits. Region slots the donor subtree does not reach are left unchanged.
pub fn subtree_transplant_at(
    genotype: &Genotype,
    tree: usize,
    target_slot: usize,
    donor: &Genotype,
    donor_slot: usize,
) -> Result<Genotype> {
    check_shape(genotype, donor)?;
    let depth = genotype.tree(tree).depth();
    let depths = slot_depths(depth);
    if target_slot >= depths.len() || donor_slot >= depths.len() {
        return Err(Error::InvalidGenotype("slot index out of range".into()));
    }
    let (dt, dd) = (depths[target_slot] as usize, depths[donor_slot] as usize);
    if dd < dt {
        return Err(Error::InvalidGenotype(format!(
            "donor slot depth {dd} is shallower than target slot depth {dt}"
        )));
    }
    let mut child = genotype.clone();
    let src = donor.tree(tree).nodes();
    let dst = child.tree_nodes_mut(tree);
    let mut stack = vec![(donor_slot, dd, target_slot, dt)];
    while let Some((s, sd, t, td)) = stack.pop() {
        dst[t] = src[s];
        if sd < depth {
            stack.push((s + 1, sd + 1, t + 1, td + 1));
            stack.push((s + template_size(depth - sd - 1) + 1, sd + 1, t + template_size(depth - td - 1) + 1, td + 1));
        }
    }
    Ok(child)
}

/// Transplant with a uniform target slot and a uniform donor slot among
/// those at least as deep.
pub fn subtree_transplant<R: Rng + ?Sized>(
    genotype: &Genotype,
    tree: usize,
    donor: &Genotype,
    rng: &mut R,
) -> Result<Genotype> {
    check_shape(genotype, donor)?;
    let depths = slot_depths(genotype.tree(tree).depth());
    let target = rng.random_range(0..depths.len());
    let eligible: Vec<usize> = (0..depths.len()).filter(|&s| depths[s] >= depths[target]).collect();
    let source = eligible[rng.random_range(0..eligible.len())];
    subtree_transplant_at(genotype, tree, target, donor, source)
}

/// Mask size `round(1 + sqrt(slots) * |z|)` with halves rounded up,
/// clamped to `[1, slots]`.
pub fn mask_size(total_slots: usize, z: f64) -> usize {
    let m = (1.0 + (total_slots as f64).sqrt() * z.abs() + 0.5).floor();
    (m as usize).clamp(1, total_slots.max(1))
}

/// Resamples a random mask of distinct slots with legal symbols: terminals
/// at leaves, grow-method symbols elsewhere.
pub fn point_mutation<R: Rng + ?Sized>(genotype: &Genotype, samplers: &[SymbolSampler], rng: &mut R) -> Genotype {
    let total = genotype.total_slots();
    let z: f64 = rng.sample(StandardNormal);
    let m = mask_size(total, z);
    let mut child = genotype.clone();
    let offsets: Vec<usize> = genotype
        .trees()
        .iter()
        .scan(0, |acc, t| {
            let start = *acc;
            *acc += t.len();
            Some(start)
        })
        .collect();
    for flat in rand::seq::index::sample(rng, total, m).into_iter() {
        let t = offsets.partition_point(|&o| o <= flat) - 1;
        let slot = flat - offsets[t];
        let depth = child.tree(t).depth();
        let slot_depth = slot_depths(depth)[slot] as usize;
        child.tree_nodes_mut(t)[slot] = samplers[t].slot(slot_depth, depth, rng);
    }
    child
}

/// Index of the winner of one tournament: `size` distinct candidates drawn
/// uniformly, lowest MSE wins, ties go to the first drawn.
pub fn tournament<R: Rng + ?Sized>(candidates: &[Individual], size: usize, rng: &mut R) -> usize {
    let size = size.clamp(1, candidates.len());
    let mut winner = None::<usize>;
    for i in rand::seq::index::sample(rng, candidates.len(), size).into_iter() {
        if winner.is_none_or(|w| candidates[i].fitness.mse < candidates[w].fitness.mse) {
            winner = Some(i);
        }
    }
    winner.expect("at least one candidate")
}

/// GP baseline engine with the same fitness, archive, logging and
/// stopping rules as [`crate::gomea::Gomea`].
#[derive(Debug)]
pub struct GpEngine {
    core: RunCore,
}

impl GpEngine {
    pub fn new(config: RunConfig, dataset: &Dataset) -> Result<Self> {
        Ok(GpEngine {
            core: RunCore::new(config, dataset, None)?,
        })
    }

    pub fn with_population(config: RunConfig, dataset: &Dataset, population: Vec<Genotype>) -> Result<Self> {
        Ok(GpEngine {
            core: RunCore::new(config, dataset, Some(population))?,
        })
    }

    pub fn step(&mut self) -> &GenerationLog {
        gp_generation(&mut self.core);
        self.core.logs.last().expect("a log line per generation")
    }

    pub fn run(mut self) -> RunResult {
        let reason = drive(&mut self.core, gp_generation);
        self.core.into_result(reason)
    }

    pub fn population(&self) -> &[Individual] {
        &self.core.population
    }

    pub fn logs(&self) -> &[GenerationLog] {
        &self.core.logs
    }
}

fn gp_generation(core: &mut RunCore) {
    let changes_before = core.archive.changes();
    let mut evaluations = core.rebatch();
    let n = core.population.len();
    let mut offspring = Vec::with_capacity(n);
    for i in 0..n {
        if core.out_of_time() {
            break;
        }
        let parent = &core.population[i].genotype;
        let donor = &core.population[core.rng.random_range(0..n)].genotype;
        let mut child =
            uniform_multitree_crossover(parent, donor, &mut core.rng).expect("population shares one shape");
        let donor = &core.population[core.rng.random_range(0..n)].genotype;
        for t in 0..child.n_trees() {
            child = subtree_transplant(&child, t, donor, &mut core.rng).expect("population shares one shape");
        }
        let genotype = point_mutation(&child, &core.samplers, &mut core.rng);
        let fitness = core.fitness.evaluate(&genotype, &Activity::of(&genotype));
        evaluations += 1;
        let ind = Individual { genotype, fitness };
        offer(&mut core.archive, &mut core.fitness, &ind);
        offspring.push(ind);
    }
    let mut pool = std::mem::take(&mut core.population);
    pool.extend(offspring);
    core.population = (0..n)
        .map(|_| pool[tournament(&pool, TOURNAMENT_SIZE, &mut core.rng)].clone())
        .collect();
    let stats = MixingStats {
        evaluations,
        ..MixingStats::default()
    };
    core.finish_generation(changes_before, evaluations, stats);
}
