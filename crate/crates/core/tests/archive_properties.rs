use modular_gomea::archive::ParetoArchive;
use proptest::prelude::*;

fn non_dominated(a: &ParetoArchive<u32>) -> bool {
    let f = a.front();
    f.iter().enumerate().all(|(i, x)| {
        f.iter().enumerate().all(|(j, y)| i == j || !(y.dominates(x.size, x.r2) || (y.size == x.size && y.r2 == x.r2)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn front_stays_bounded_and_non_dominated(
        points in prop::collection::vec((1u32..200, 0u32..1000), 1..400),
        capacity in 1usize..30,
    ) {
        let mut archive = ParetoArchive::new(capacity);
        for (k, (s, q)) in points.into_iter().enumerate() {
            let size = f64::from(s);
            let r2 = f64::from(q) / 1000.0;
            let dominates_member = archive.front().iter().any(|e| {
                (size <= e.size && r2 >= e.r2) && (size < e.size || r2 > e.r2)
            });
            let inserted = archive.try_insert(size, r2, k as u32);
            if dominates_member {
                prop_assert!(inserted);
            }
            prop_assert!(archive.len() <= capacity);
            prop_assert!(non_dominated(&archive));
        }
    }
}

#[test]
fn ten_thousand_insertions() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let mut archive = ParetoArchive::new(100);
    for k in 0..10_000u32 {
        let size = f64::from(rng.random_range(1..500u32));
        let r2 = 1.0 - (size / 500.0).powf(-0.5) * rng.random::<f64>();
        archive.try_insert(size, r2, k);
        assert!(archive.len() <= 100);
    }
    assert!(non_dominated(&archive));
}
