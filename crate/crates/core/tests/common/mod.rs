#![allow(dead_code)]

use modular_gomea::data::Matrix;
use modular_gomea::expr::{slot_depths, Genotype, Symbol, Tree};
use modular_gomea::gomea::{initialize_population, samplers, RunConfig, SymbolSampler};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FEATURES: usize = 3;

pub fn config(trees: usize, depth: usize, seed: u64) -> RunConfig {
    let mut c = RunConfig::new(trees, depth, 2, seed);
    c.p_coefficient = 0.3;
    c
}

/// A random genotype from the initializer (full or grow, by parity of seed).
pub fn random_genotype(trees: usize, depth: usize, seed: u64) -> (Genotype, Vec<SymbolSampler>) {
    let c = config(trees, depth, seed);
    let s = samplers(&c, FEATURES, (-2.0, 2.0)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pop = initialize_population(&c, &s, &mut rng).unwrap();
    (pop[(seed % 2) as usize].clone(), s)
}

pub fn random_rows(rows: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<f64>> = (0..rows)
        .map(|_| (0..FEATURES).map(|_| rng.random_range(-3.0..3.0)).collect())
        .collect();
    Matrix::from_rows(&data).unwrap()
}

/// Replaces the symbols of the selected slots with legal random ones.
pub fn resample_slots(
    g: &Genotype,
    samplers: &[SymbolSampler],
    seed: u64,
    mut pick: impl FnMut(usize, usize) -> bool,
) -> Genotype {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trees = g
        .trees()
        .iter()
        .enumerate()
        .map(|(t, tree)| {
            let depth = tree.depth();
            let depths = slot_depths(depth);
            let nodes = tree
                .nodes()
                .iter()
                .enumerate()
                .map(|(s, &sym)| if pick(t, s) { samplers[t].slot(depths[s] as usize, depth, &mut rng) } else { sym })
                .collect();
            Tree::new(depth, nodes).unwrap()
        })
        .collect();
    Genotype::new(trees).unwrap()
}

/// Slot legality: terminals at maximal depth, calls to earlier trees only,
/// arguments only in callable non-first trees.
pub fn is_legal(g: &Genotype) -> bool {
    is_legal_with(g, FEATURES)
}

pub fn is_legal_with(g: &Genotype, features: usize) -> bool {
    let n = g.n_trees();
    g.trees().iter().enumerate().all(|(t, tree)| {
        let depths = slot_depths(tree.depth());
        tree.nodes().iter().enumerate().all(|(s, sym)| {
            let leaf_ok = depths[s] as usize != tree.depth() || sym.is_terminal();
            let ref_ok = match *sym {
                Symbol::Subexpr(j) => (j as usize) < t,
                Symbol::Arg(k) => k < 2 && t > 0 && t + 1 < n,
                Symbol::Feature(k) => (k as usize) < features,
                _ => true,
            };
            leaf_ok && ref_ok
        })
    })
}

pub fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}
