use rand::Rng;

use super::mi::MiMatrix;

/// Family of subsets of locus indices for one tree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Fos {
    subsets: Vec<Vec<usize>>,
}

impl Fos {
    pub fn new(subsets: Vec<Vec<usize>>) -> Self {
        Fos { subsets }
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }
}

/// A subset of loci of one tree in a multi-tree genotype.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSubset {
    pub tree: usize,
    pub loci: Vec<usize>,
}

/// The per-tree families contracted into one list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlatFos {
    pub subsets: Vec<TaggedSubset>,
}

impl FlatFos {
    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }
}

/// UPGMA linkage tree over an MI similarity matrix.
///
/// Starts from singletons and repeatedly merges the pair of clusters with
/// the highest average pairwise MI; exact ties are broken uniformly at
/// random. Returns all singletons followed by every merged set in merge
/// order (`2l - 1` subsets), without the final all-loci set when
/// `include_root` is false.
pub fn build_linkage_tree<R: Rng + ?Sized>(mi: &MiMatrix, include_root: bool, rng: &mut R) -> Fos {
    let l = mi.size();
    let mut subsets: Vec<Vec<usize>> = (0..l).map(|i| vec![i]).collect();
    if l == 0 {
        return Fos { subsets };
    }

    // Active clusters: index into `subsets` plus a similarity row per cluster.
    let mut active: Vec<usize> = (0..l).collect();
    let mut sim: Vec<Vec<f64>> = (0..l).map(|i| (0..l).map(|j| mi.get(i, j)).collect()).collect();

    while active.len() > 1 {
        let k = active.len();
        let mut best = f64::NEG_INFINITY;
        let mut best_pair = (0, 1);
        let mut ties = 0u32;
        for a in 0..k {
            for b in (a + 1)..k {
                let s = sim[a][b];
                if s > best {
                    best = s;
                    best_pair = (a, b);
                    ties = 1;
                } else if s == best {
                    ties += 1;
                    if rng.random_range(0..ties) == 0 {
                        best_pair = (a, b);
                    }
                }
            }
        }

        let (a, b) = best_pair;
        let (ia, ib) = (active[a], active[b]);
        let (na, nb) = (subsets[ia].len() as f64, subsets[ib].len() as f64);
        let mut merged = subsets[ia].clone();
        merged.extend_from_slice(&subsets[ib]);
        subsets.push(merged);

        // Average linkage: similarity of the union is the size-weighted mean.
        let row: Vec<f64> = (0..k).map(|c| (na * sim[a][c] + nb * sim[b][c]) / (na + nb)).collect();
        for c in 0..k {
            sim[a][c] = row[c];
            sim[c][a] = row[c];
        }
        active[a] = subsets.len() - 1;
        active.swap_remove(b);
        sim.swap_remove(b);
        for r in sim.iter_mut() {
            r.swap_remove(b);
        }
    }

    if !include_root {
        subsets.pop();
    }
    Fos { subsets }
}

/// Tags each tree's subsets with the tree index and concatenates them.
pub fn flatten_foses(per_tree: &[Fos]) -> FlatFos {
    FlatFos {
        subsets: per_tree
            .iter()
            .enumerate()
            .flat_map(|(tree, fos)| {
                fos.subsets.iter().map(move |loci| TaggedSubset {
                    tree,
                    loci: loci.clone(),
                })
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn groups_most_similar_first() {
        // 0-1 strongly linked, 2-3 weakly, cross links zero.
        let mi = MiMatrix::from_fn(4, |i, j| match (i.min(j), i.max(j)) {
            (a, b) if a == b => 1.0,
            (0, 1) => 0.9,
            (2, 3) => 0.4,
            _ => 0.0,
        });
        let fos = build_linkage_tree(&mi, true, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(fos.len(), 7);
        let mut first = fos.subsets()[4].clone();
        first.sort();
        assert_eq!(first, [0, 1]);
        let mut second = fos.subsets()[5].clone();
        second.sort();
        assert_eq!(second, [2, 3]);
        assert_eq!(fos.subsets()[6].len(), 4);
    }

    #[test]
    fn average_linkage_uses_mean_similarity() {
        // After {0,1} merge, sim({0,1},2) = (0.8 + 0.0)/2 = 0.4 < sim(2,3) = 0.5.
        let mi = MiMatrix::from_fn(4, |i, j| match (i.min(j), i.max(j)) {
            (a, b) if a == b => 1.0,
            (0, 1) => 0.9,
            (0, 2) => 0.8,
            (2, 3) => 0.5,
            _ => 0.0,
        });
        let fos = build_linkage_tree(&mi, true, &mut ChaCha8Rng::seed_from_u64(3));
        let mut second = fos.subsets()[5].clone();
        second.sort();
        assert_eq!(second, [2, 3]);
    }

    #[test]
    fn degenerate_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fos = build_linkage_tree(&MiMatrix::zeros(1), true, &mut rng);
        assert_eq!(fos.subsets(), &[vec![0]]);
        assert!(build_linkage_tree(&MiMatrix::zeros(1), false, &mut rng).is_empty());
    }
}
