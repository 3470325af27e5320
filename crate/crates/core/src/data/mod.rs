//! Datasets, CSV ingestion, synthetic benchmarks and regression metrics.

mod csv_io;
mod dataset;
mod matrix;
pub mod metrics;
pub mod synthetic;

pub use csv_io::load_csv;
pub use dataset::{Dataset, GroundTruth};
pub use matrix::Matrix;
pub use metrics::{linear_scaling_fit, mse, r_squared};
pub use synthetic::{generate_synthetic, ground_truth_genotype, recovery_check, SyntheticSpec};
