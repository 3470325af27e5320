//! A small sweep over grids and repetitions, aggregated into report tables.

use modular_gomea::experiment::{cmd_report, cmd_sweep, parse_grid, ExperimentPlan};

fn main() -> modular_gomea::Result<()> {
    let out = std::env::temp_dir().join("mgomea_sweep_example");
    let plan = ExperimentPlan {
        synthetic: Some(3),
        grid: parse_grid("3x3,5x1")?,
        populations: vec![128],
        repetitions: 2,
        seed: 10,
        budget_generations: Some(5),
        out,
        ..ExperimentPlan::default()
    };
    let csv = cmd_sweep(&plan, |row| {
        println!("{} rep {}: r2 {:.4}", row.config, row.repetition, row.r2_train.unwrap_or(f64::NAN));
    })?;
    println!("{}", cmd_report(&csv)?);
    Ok(())
}
