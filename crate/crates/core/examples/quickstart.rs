//! Evolve a modular expression for synthetic benchmark 2.
//!
//! Run with `cargo run --release --example quickstart`.

use modular_gomea::data::{generate_synthetic, recovery_check, SyntheticSpec};
use modular_gomea::gomea::{Gomea, RunConfig};

fn main() -> modular_gomea::Result<()> {
    let spec = SyntheticSpec::new(2, 7);
    let data = generate_synthetic(&spec)?;

    // four templates of depth 4: three subexpressions and the output
    let mut config = RunConfig::new(4, 4, 512, 1);
    config.coefficients = false;
    config.max_generations = Some(15);

    let result = Gomea::new(config, &data)?.run();
    for log in result.logs.iter().step_by(5) {
        println!(
            "gen {:>3}  best r2 {:.4}  evaluations {:>7}  archive {:>3}",
            log.generation, log.best_r2, log.total_evaluations, log.archive_size
        );
    }
    println!("stopped: {:?} after {} generations", result.stop_reason, result.generations);
    println!("best r2 on the training data: {:.6}", result.best_r2());
    println!("{}", result.best_infix());

    if let Some(best) = result.best() {
        println!("recovered: {}", recovery_check(&best.genotype, &spec, best.scaling)?);
    }
    Ok(())
}
