//! Mutual information and linkage trees on a random population, and the
//! family-of-subsets sizes of two template grids.

use modular_gomea::gomea::{initialize_population, samplers, RunConfig};
use modular_gomea::linkage::{estimate_population_mi, LinkageModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn family_size(trees: usize, depth: usize) -> modular_gomea::Result<usize> {
    let mut config = RunConfig::new(trees, depth, 256, 3);
    config.coefficients = false;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let s = samplers(&config, 8, (0.0, 1.0))?;
    let population = initialize_population(&config, &s, &mut rng)?;
    let bias = estimate_population_mi(&population)?;
    Ok(LinkageModel::learn(&population, &bias, &mut rng)?.flat.len())
}

fn main() -> modular_gomea::Result<()> {
    println!("4 trees x depth 4: {} subsets", family_size(4, 4)?);
    println!("1 tree  x depth 7: {} subsets", family_size(1, 7)?);

    let mut config = RunConfig::new(2, 3, 500, 11);
    config.coefficients = false;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let s = samplers(&config, 3, (0.0, 1.0))?;
    let mut population = initialize_population(&config, &s, &mut rng)?;
    let bias = estimate_population_mi(&population)?;

    // make slots 1 and 8 of the output tree agree, as selection would
    for (k, g) in population.iter_mut().enumerate() {
        let text = g.to_lines();
        let mut lines: Vec<Vec<String>> = text.lines().map(|l| l.split(' ').map(String::from).collect()).collect();
        let sym = if k % 2 == 0 { "+" } else { "*" };
        lines[1][1] = sym.into();
        lines[1][8] = sym.into();
        let joined: Vec<String> = lines.iter().map(|l| l.join(" ")).collect();
        *g = modular_gomea::expr::Genotype::from_lines(&joined.join("\n"))?;
    }
    let model = LinkageModel::learn(&population, &bias, &mut rng)?;
    let mi = &model.mi[1];
    println!("output tree: corrected MI(1, 8) = {:.3}, MI(1, 2) = {:.3}", mi.get(1, 8), mi.get(1, 2));
    let first_pair = model.per_tree[1].subsets().iter().find(|s| s.len() == 2);
    println!("first merged pair of the output tree: {first_pair:?}");

    let dir = std::env::temp_dir().join("mgomea_linkage");
    model.dump_csv(&dir)?;
    println!("matrices and subsets written to {}", dir.display());
    Ok(())
}
