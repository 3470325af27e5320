//! The elitist archive: size versus accuracy after a short run, plus the
//! archive on its own.

use modular_gomea::archive::ParetoArchive;
use modular_gomea::data::{generate_synthetic, SyntheticSpec};
use modular_gomea::gomea::{Gomea, RunConfig};

fn main() -> modular_gomea::Result<()> {
    let data = generate_synthetic(&SyntheticSpec::new(5, 2))?.with_split(0.7, 2)?;
    let mut config = RunConfig::new(3, 3, 256, 4);
    config.coefficients = false;
    config.max_generations = Some(10);
    let result = Gomea::new(config, &data)?.run();

    let (x, y) = data.test_split();
    println!("{:>5}  {:>9}  {:>9}  expression", "size", "r2 train", "r2 test");
    for p in result.front(Some((&x, &y))) {
        let first = p.expression.lines().next().unwrap_or_default();
        println!("{:>5}  {:>9.5}  {:>9.5}  {first}", p.size, p.r2_train, p.r2_test.unwrap_or(f64::NAN));
    }

    let mut archive = ParetoArchive::new(3);
    for (size, r2, name) in [(5.0, 0.5, "a"), (3.0, 0.6, "b"), (9.0, 0.9, "c"), (2.0, 0.1, "d"), (12.0, 0.95, "e")] {
        let kept = archive.try_insert(size, r2, name);
        println!("offer {name} ({size}, {r2}): {}", if kept { "kept" } else { "rejected" });
    }
    let names: Vec<&str> = archive.front().iter().map(|e| e.item).collect();
    println!("front by size: {names:?}");
    Ok(())
}
