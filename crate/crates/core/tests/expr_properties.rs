mod common;

use common::{bits, random_genotype, random_rows, resample_slots};
use modular_gomea::expr::{evaluate, inline, template_size, preorder_children, slot_depths, Activity, Genotype, Symbol, Tree, UsageStats};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn introns_never_change_predictions(trees in 1usize..5, depth in 1usize..5, seed in any::<u64>()) {
        let (g, samplers) = random_genotype(trees, depth, seed);
        let act = Activity::of(&g);
        let noisy = resample_slots(&g, &samplers, seed ^ 1, |t, s| !act.is_active(t, s));
        let x = random_rows(12, seed);
        prop_assert_eq!(bits(&evaluate(&g, &x).unwrap()), bits(&evaluate(&noisy, &x).unwrap()));
    }

    #[test]
    fn inlined_expansion_predicts_identically(trees in 1usize..5, depth in 1usize..4, seed in any::<u64>()) {
        let (g, _) = random_genotype(trees, depth, seed);
        let flat = inline(&g);
        let x = random_rows(12, seed.wrapping_add(3));
        let modular = evaluate(&g, &x).unwrap();
        // a too-deep expansion cannot be laid into one template; compare row-wise then
        let expanded = match flat.to_genotype() {
            Ok(single) => evaluate(&single, &x).unwrap(),
            Err(_) => (0..x.rows()).map(|r| flat.eval_row(&x.row(r))).collect(),
        };
        prop_assert_eq!(bits(&modular), bits(&expanded));
    }

    #[test]
    fn evaluation_is_pure(trees in 1usize..5, depth in 1usize..5, seed in any::<u64>()) {
        let (g, _) = random_genotype(trees, depth, seed);
        let x = random_rows(600, seed);
        prop_assert_eq!(bits(&evaluate(&g, &x).unwrap()), bits(&evaluate(&g, &x).unwrap()));
    }

    #[test]
    fn single_use_means_no_deduplication(trees in 1usize..5, depth in 1usize..4, seed in any::<u64>()) {
        let (g, _) = random_genotype(trees, depth, seed);
        let stats = UsageStats::of(&g);
        if stats.subexpressions_reused == 0 {
            prop_assert_eq!(stats.nodes_deduplicated, stats.nodes_expanded);
        }
        prop_assert!(stats.nodes_deduplicated <= stats.nodes_expanded);
        prop_assert_eq!(stats.nodes_expanded, inline(&g).size());
    }
}

#[test]
fn template_sizes_and_children() {
    for d in 0..=10 {
        assert_eq!(template_size(d), (1 << (d + 1)) - 1);
        let n = template_size(d);
        let depths = slot_depths(d);
        let mut seen = vec![0u32; n];
        for i in 0..n {
            if let Some((l, r)) = preorder_children(i, depths[i] as usize, d).unwrap() {
                seen[l] += 1;
                seen[r] += 1;
            }
        }
        assert_eq!(seen[0], 0);
        assert!(seen[1..].iter().all(|&k| k == 1), "depth {d}");
    }
}

#[test]
fn forward_and_self_references_are_rejected() {
    let t = |e: &str| Tree::from_expression(1, e, Symbol::Feature(0)).unwrap();
    assert!(Genotype::new(vec![t("f0 x0 x0")]).is_err());
    assert!(Genotype::new(vec![t("x0"), t("f2 x0 x0"), t("x0")]).is_err());
    assert!(Genotype::new(vec![t("x0"), t("f0 x0 x0")]).is_ok());
}
