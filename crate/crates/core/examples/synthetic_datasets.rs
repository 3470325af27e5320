//! The five synthetic benchmarks and their hand-built modular genotypes.

use modular_gomea::data::{generate_synthetic, ground_truth_genotype, r_squared, recovery_check, SyntheticSpec};
use modular_gomea::expr::{evaluate, to_infix, UsageStats};

fn main() -> modular_gomea::Result<()> {
    for id in 1..=5u8 {
        let spec = SyntheticSpec::new(id, 42);
        let data = generate_synthetic(&spec)?;
        let truth = ground_truth_genotype(id)?;
        let pred = evaluate(&truth, data.features())?;
        let stats = UsageStats::of(&truth);

        println!("expression {id}: {} features, {} rows", data.n_features(), data.rows());
        if let Some(note) = data.ground_truth().and_then(|g| g.note.as_deref()) {
            println!("  note: {note}");
        }
        println!("  r2 of the ground truth: {}", r_squared(&pred, data.target())?);
        println!("  recovered on fresh samples: {}", recovery_check(&truth, &spec, None)?);
        println!(
            "  subexpressions used {} re-used {} as function {}; nodes {} / deduplicated {} / expanded {}",
            stats.subexpressions_used,
            stats.subexpressions_reused,
            stats.reused_as_function,
            stats.nodes_total,
            stats.nodes_deduplicated,
            stats.nodes_expanded
        );
        for line in to_infix(&truth, false).lines() {
            println!("    {line}");
        }
    }

    let path = std::env::temp_dir().join("synthetic_3.csv");
    generate_synthetic(&SyntheticSpec::new(3, 1))?.write_csv(&path, false)?;
    println!("wrote {}", path.display());
    Ok(())
}
