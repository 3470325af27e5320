//! Linkage learning: mutual information between template slots, UPGMA
//! linkage trees per tree, and the flattened family of subsets used by
//! mixing.

mod fos;
mod mi;

use std::io::Write;
use std::path::Path;

use rand::Rng;

pub use fos::{build_linkage_tree, flatten_foses, FlatFos, Fos, TaggedSubset};
pub use mi::{estimate_mi, subtract_bias, MiMatrix};

use crate::error::{Error, Result};
use crate::expr::Genotype;

/// Categorical symbol ids of tree `tree`, one column per slot.
pub fn population_columns(population: &[Genotype], tree: usize) -> Vec<Vec<u64>> {
    let len = population.first().map_or(0, |g| g.tree(tree).len());
    let mut cols = vec![Vec::with_capacity(population.len()); len];
    for g in population {
        for (col, sym) in cols.iter_mut().zip(g.tree(tree).nodes()) {
            col.push(sym.category());
        }
    }
    cols
}

/// MI matrix of every tree of the population.
pub fn estimate_population_mi(population: &[Genotype]) -> Result<Vec<MiMatrix>> {
    let first = population.first().ok_or(Error::EmptyPopulation)?;
    (0..first.n_trees())
        .map(|t| estimate_mi(&population_columns(population, t)))
        .collect()
}

/// Linkage model of one generation.
#[derive(Debug, Clone)]
pub struct LinkageModel {
    /// Bias-corrected MI matrix per tree.
    pub mi: Vec<MiMatrix>,
    /// Linkage-tree family per tree; the output tree's lacks the all-slots set.
    pub per_tree: Vec<Fos>,
    pub flat: FlatFos,
}

impl LinkageModel {
    /// Estimates MI per tree, removes the initialization bias and builds the
    /// per-tree linkage trees. Only the last (output) tree drops its root set.
    pub fn learn<R: Rng + ?Sized>(population: &[Genotype], bias: &[MiMatrix], rng: &mut R) -> Result<Self> {
        let raw = estimate_population_mi(population)?;
        if raw.len() != bias.len() {
            return Err(Error::SizeMismatch {
                expected: raw.len(),
                found: bias.len(),
            });
        }
        let n = raw.len();
        let mut mi = Vec::with_capacity(n);
        let mut per_tree = Vec::with_capacity(n);
        for (t, (m, b)) in raw.iter().zip(bias).enumerate() {
            let corrected = m.subtract_bias(b)?;
            per_tree.push(build_linkage_tree(&corrected, t + 1 < n, rng));
            mi.push(corrected);
        }
        let flat = flatten_foses(&per_tree);
        Ok(LinkageModel { mi, per_tree, flat })
    }

    /// Writes `tree<i>_mi.csv` per tree and one `fos.csv` listing every
    /// flattened subset (`position,tree,size,loci` with loci separated by `;`).
    pub fn dump_csv(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (t, m) in self.mi.iter().enumerate() {
            let path = dir.join(format!("tree{t}_mi.csv"));
            let mut f = std::fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
            let mut text = String::new();
            for i in 0..m.size() {
                let row: Vec<String> = (0..m.size()).map(|j| m.get(i, j).to_string()).collect();
                text.push_str(&row.join(","));
                text.push('\n');
            }
            f.write_all(text.as_bytes()).map_err(|e| Error::io(&path, e))?;
        }
        let path = dir.join("fos.csv");
        let mut w = csv::Writer::from_path(&path).map_err(|e| Error::Format {
            path: path.clone(),
            message: e.to_string(),
        })?;
        let to_err = |e: csv::Error| Error::Format {
            path: path.clone(),
            message: e.to_string(),
        };
        w.write_record(["position", "tree", "size", "loci"]).map_err(to_err)?;
        for (pos, s) in self.flat.subsets.iter().enumerate() {
            let loci: Vec<String> = s.loci.iter().map(usize::to_string).collect();
            w.write_record([pos.to_string(), s.tree.to_string(), s.loci.len().to_string(), loci.join(";")])
                .map_err(to_err)?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{Symbol, Tree};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn model_sizes_follow_template_counts() {
        let t = |d| Tree::new(d, vec![Symbol::Feature(0); crate::expr::template_size(d)]).unwrap();
        let pop: Vec<Genotype> = (0..4).map(|_| Genotype::new(vec![t(4), t(4), t(4), t(4)]).unwrap()).collect();
        let bias = estimate_population_mi(&pop).unwrap();
        let model = LinkageModel::learn(&pop, &bias, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(model.flat.len(), 243);
        assert_eq!(model.per_tree[3].len(), 60);
        assert!(model.flat.subsets.iter().all(|s| s.tree < 4));
    }
}
