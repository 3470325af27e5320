use modular_gomea::data::{linear_scaling_fit, r_squared};
use proptest::prelude::*;

fn pairs() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..200).prop_flat_map(|n| {
        (
            prop::collection::vec(-1e3f64..1e3, n),
            prop::collection::vec(-1e3f64..1e3, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn scaling_never_lowers_r2((pred, target) in pairs()) {
        if let Ok(before) = r_squared(&pred, &target) {
            let (a, b) = linear_scaling_fit(&pred, &target).unwrap();
            let scaled: Vec<f64> = pred.iter().map(|p| a + b * p).collect();
            let after = r_squared(&scaled, &target).unwrap();
            prop_assert!(after >= before - 1e-9 * before.abs().max(1.0), "{} < {}", after, before);
        }
    }

    #[test]
    fn affine_targets_give_back_their_coefficients(
        pred in prop::collection::vec(-100f64..100.0, 3..200),
        a in -50f64..50.0,
        b in prop_oneof![-20f64..-0.1, 0.1f64..20.0],
    ) {
        let spread = pred.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - pred.iter().cloned().fold(f64::INFINITY, f64::min);
        prop_assume!(spread > 1.0);
        let target: Vec<f64> = pred.iter().map(|p| a + b * p).collect();
        let (fa, fb) = linear_scaling_fit(&pred, &target).unwrap();
        prop_assert!((fa - a).abs() <= 1e-9 * a.abs().max(1.0) * 10.0, "{} vs {}", fa, a);
        prop_assert!((fb - b).abs() <= 1e-9 * b.abs().max(1.0), "{} vs {}", fb, b);
    }

    #[test]
    fn r2_ignores_joint_permutation((pred, target) in pairs(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut idx: Vec<usize> = (0..pred.len()).collect();
        idx.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let p2: Vec<f64> = idx.iter().map(|&i| pred[i]).collect();
        let t2: Vec<f64> = idx.iter().map(|&i| target[i]).collect();
        if let (Ok(x), Ok(y)) = (r_squared(&pred, &target), r_squared(&p2, &t2)) {
            prop_assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0));
        }
    }
}
