//! Template-constrained GP on the same multi-tree representation, next to
//! GOMEA with an identical generation budget.

use modular_gomea::data::{generate_synthetic, SyntheticSpec};
use modular_gomea::gomea::{Gomea, RunConfig};
use modular_gomea::gp::GpEngine;

fn main() -> modular_gomea::Result<()> {
    let data = generate_synthetic(&SyntheticSpec::new(4, 3))?;
    let mut config = RunConfig::new(4, 4, 512, 5);
    config.coefficients = false;
    config.max_generations = Some(20);

    let gp = GpEngine::new(config.clone(), &data)?.run();
    let gomea = Gomea::new(config, &data)?.run();

    for (name, r) in [("gp", &gp), ("gomea", &gomea)] {
        println!(
            "{name:>6}: r2 {:.5}  evaluations {:>8}  generations {}",
            r.best_r2(),
            r.evaluations,
            r.generations
        );
    }
    println!("gp best:\n{}", gp.best_infix());
    Ok(())
}
