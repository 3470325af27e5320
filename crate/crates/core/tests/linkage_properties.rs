use modular_gomea::linkage::{build_linkage_tree, estimate_mi, flatten_foses, MiMatrix};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_columns(loci: usize, rows: usize, seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..loci).map(|_| (0..rows).map(|_| rng.random_range(0..4u64)).collect()).collect()
}

fn random_mi(l: usize, seed: u64) -> MiMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = MiMatrix::zeros(l);
    for i in 0..l {
        for j in i..l {
            // coarse values force ties
            m.set(i, j, f64::from(rng.random_range(0..5u8)) * 0.25);
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mi_is_symmetric_nonnegative_with_entropy_diagonal(loci in 1usize..8, rows in 1usize..60, seed in any::<u64>()) {
        let cols = random_columns(loci, rows, seed);
        let m = estimate_mi(&cols).unwrap();
        for i in 0..loci {
            for j in 0..loci {
                prop_assert_eq!(m.get(i, j).to_bits(), m.get(j, i).to_bits());
                prop_assert!(m.get(i, j) >= -1e-12);
            }
            prop_assert!((m.get(i, i) - m.entropy(i)).abs() < 1e-15);
            let n = rows as f64;
            let h: f64 = (0..4u64)
                .map(|v| cols[i].iter().filter(|&&c| c == v).count() as f64 / n)
                .filter(|&p| p > 0.0)
                .map(|p| -p * p.ln())
                .sum();
            prop_assert!((m.get(i, i) - h).abs() < 1e-12);
        }
    }

    #[test]
    fn mi_ignores_row_order(loci in 1usize..8, rows in 2usize..60, seed in any::<u64>()) {
        let cols = random_columns(loci, rows, seed);
        let mut order: Vec<usize> = (0..rows).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 7));
        let shuffled: Vec<Vec<u64>> = cols.iter().map(|c| order.iter().map(|&r| c[r]).collect()).collect();
        let a = estimate_mi(&cols).unwrap();
        let b = estimate_mi(&shuffled).unwrap();
        for i in 0..loci {
            for j in 0..loci {
                prop_assert!((a.get(i, j) - b.get(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn merges_are_disjoint_unions_of_earlier_subsets(l in 1usize..40, seed in any::<u64>()) {
        let fos = build_linkage_tree(&random_mi(l, seed), true, &mut ChaCha8Rng::seed_from_u64(seed));
        let subsets = fos.subsets();
        prop_assert_eq!(subsets.len(), 2 * l - 1);
        for k in l..subsets.len() {
            let mut merged = subsets[k].clone();
            merged.sort_unstable();
            let found = (0..k).any(|a| (0..k).any(|b| {
                if a == b {
                    return false;
                }
                let mut u = subsets[a].clone();
                u.extend_from_slice(&subsets[b]);
                u.sort_unstable();
                u.windows(2).all(|w| w[0] != w[1]) && u == merged
            }));
            prop_assert!(found, "subset {} is not a merge", k);
        }
    }

    #[test]
    fn linkage_tree_is_seeded(l in 1usize..40, seed in any::<u64>()) {
        let m = random_mi(l, seed);
        let a = build_linkage_tree(&m, true, &mut ChaCha8Rng::seed_from_u64(seed));
        let b = build_linkage_tree(&m, true, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(a, b);
    }
}

#[test]
fn cardinality_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for depth in 0..=7 {
        let l = (1usize << (depth + 1)) - 1;
        let m = random_mi(l, depth as u64);
        let with_root = build_linkage_tree(&m, true, &mut rng);
        let without = build_linkage_tree(&m, false, &mut rng);
        assert_eq!(with_root.len(), 2 * l - 1, "l = {l}");
        assert_eq!(without.len(), 2 * l - 2, "l = {l}");
        for n in 1..=4 {
            let mut per_tree = vec![with_root.clone(); n - 1];
            per_tree.push(without.clone());
            assert_eq!(flatten_foses(&per_tree).len(), (n - 1) * (2 * l - 1) + (2 * l - 2));
        }
    }
}
