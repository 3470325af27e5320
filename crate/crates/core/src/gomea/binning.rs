use crate::expr::{Genotype, Symbol};

/// Equal-frequency bins of one locus: value `v` among `m` values gets bin
/// `min(bins - 1, floor(bins * rank / m))`, where `rank` is the position of
/// the first occurrence of `v` in sorted order. Equal values share a bin.
pub fn quantile_bins(values: &[f64], bins: u8) -> Vec<u8> {
    let m = values.len();
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    values
        .iter()
        .map(|v| {
            let rank = sorted.partition_point(|s| s.total_cmp(v).is_lt());
            ((bins as usize * rank / m).min(bins as usize - 1)) as u8
        })
        .collect()
}

/// Reassigns the bin of every coefficient from the value distribution at its
/// locus (tree and slot) across the population.
pub fn assign_coefficient_bins(population: &mut [Genotype], bins: u8) {
    let Some(first) = population.first() else { return };
    let shape: Vec<usize> = first.trees().iter().map(|t| t.len()).collect();
    let mut values = Vec::new();
    let mut owners = Vec::new();
    for (tree, &len) in shape.iter().enumerate() {
        for slot in 0..len {
            values.clear();
            owners.clear();
            for (k, g) in population.iter().enumerate() {
                if let Symbol::Coefficient { value, .. } = g.tree(tree).nodes()[slot] {
                    values.push(value);
                    owners.push(k);
                }
            }
            if values.is_empty() {
                continue;
            }
            for (&k, b) in owners.iter().zip(quantile_bins(&values, bins)) {
                if let Symbol::Coefficient { bin, .. } = &mut population[k].tree_nodes_mut(tree)[slot] {
                    *bin = b;
                }
            }
        }
    }
}
