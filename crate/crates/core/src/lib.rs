//! Symbolic regression with modular GP-GOMEA.
//!
//! An individual is a vector of fixed-size expression templates. The last
//! template is the output expression; every earlier template is a
//! subexpression that later templates may call as a function of up to two
//! arguments. Variation is Gene-pool Optimal Mixing driven by a linkage
//! tree learned per template from mutual information in the population.
//!
//! * [`expr`]: genotypes, evaluation, activity (introns), usage statistics, infix text
//! * [`linkage`]: mutual information, UPGMA linkage trees, flattened family of subsets
//! * [`gomea`]: run configuration, initialization, fitness, mixing, the evolutionary loop
//! * [`archive`]: elitist archive over (expression size, R²)
//! * [`gp`]: template-constrained GP baseline on the same representation
//! * [`data`]: datasets, CSV loading, synthetic benchmarks, metrics
//! * [`experiment`]: single runs, sweeps and reports writing logs and CSV
//!
//! ```no_run
//! use modular_gomea::data::{generate_synthetic, SyntheticSpec};
//! use modular_gomea::gomea::{RunConfig, Gomea};
//!
//! let data = generate_synthetic(&SyntheticSpec::new(2, 7)).unwrap();
//! let mut config = RunConfig::new(4, 4, 512, 1);
//! config.coefficients = false;
//! config.max_generations = Some(20);
//! let result = Gomea::new(config, &data).unwrap().run();
//! println!("{}", result.best_infix());
//! ```

pub mod archive;
pub mod data;
pub mod error;
pub mod experiment;
pub mod expr;
pub mod gomea;
pub mod gp;
pub mod linkage;

pub use error::{Error, Result};
