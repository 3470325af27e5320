//! Terminal policies for callable trees. Under `koza`, trees that can be
//! called with arguments see only their arguments as terminals.

use modular_gomea::data::{generate_synthetic, SyntheticSpec};
use modular_gomea::expr::Symbol;
use modular_gomea::gomea::{samplers, Gomea, RunConfig, TerminalPolicy};

fn main() -> modular_gomea::Result<()> {
    let data = generate_synthetic(&SyntheticSpec::new(5, 8))?;
    for policy in [TerminalPolicy::Full, TerminalPolicy::Koza] {
        let mut config = RunConfig::new(4, 3, 256, 2);
        config.terminal_policy = policy;
        config.max_generations = Some(8);

        println!("{policy:?}");
        for (t, s) in samplers(&config, data.n_features(), (0.0, 1.0))?.iter().enumerate() {
            let vars: Vec<String> = s.variables().iter().map(Symbol::to_string).collect();
            println!("  tree {t}: terminals {}  coefficients {}", vars.join(" "), s.coefficient_range().is_some());
        }
        let result = Gomea::new(config, &data)?.run();
        println!("  best r2 {:.5}\n{}", result.best_r2(), result.best_infix());
    }
    Ok(())
}
