use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Provenance of a synthetic dataset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub id: u8,
    pub seed: u64,
    pub note: Option<String>,
}

/// Feature matrix, target and train/test partition.
#[derive(Debug, Clone)]
pub struct Dataset {
    features: Matrix,
    target: Vec<f64>,
    feature_names: Vec<String>,
    train: Vec<usize>,
    test: Vec<usize>,
    ground_truth: Option<GroundTruth>,
}

impl Dataset {
    /// All rows go to the training split.
    pub fn new(features: Matrix, target: Vec<f64>, feature_names: Vec<String>) -> Result<Self> {
        if features.rows() != target.len() {
            return Err(Error::SizeMismatch {
                expected: features.rows(),
                found: target.len(),
            });
        }
        if feature_names.len() != features.cols() {
            return Err(Error::SizeMismatch {
                expected: features.cols(),
                found: feature_names.len(),
            });
        }
        let bad_cell = features.columns().iter().flatten().any(|v| !v.is_finite());
        if bad_cell || target.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset("missing or non-finite values".into()));
        }
        let train = (0..target.len()).collect();
        Ok(Dataset {
            features,
            target,
            feature_names,
            train,
            test: Vec::new(),
            ground_truth: None,
        })
    }

    /// Seeded uniform split: `round(fraction * rows)` training rows.
    pub fn with_split(mut self, train_fraction: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&train_fraction) {
            return Err(Error::InvalidConfig(format!("train fraction {train_fraction} outside [0, 1]")));
        }
        let n = self.rows();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let cut = ((train_fraction * n as f64).round() as usize).min(n);
        let mut train = idx[..cut].to_vec();
        let mut test = idx[cut..].to_vec();
        train.sort_unstable();
        test.sort_unstable();
        self.train = train;
        self.test = test;
        Ok(self)
    }

    pub fn with_ground_truth(mut self, gt: GroundTruth) -> Self {
        self.ground_truth = Some(gt);
        self
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.cols()
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn train_rows(&self) -> &[usize] {
        &self.train
    }

    pub fn test_rows(&self) -> &[usize] {
        &self.test
    }

    pub fn ground_truth(&self) -> Option<&GroundTruth> {
        self.ground_truth.as_ref()
    }

    /// Features and targets of the given rows.
    pub fn subset(&self, rows: &[usize]) -> (Matrix, Vec<f64>) {
        (
            self.features.select_rows(rows),
            rows.iter().map(|&r| self.target[r]).collect(),
        )
    }

    pub fn train_split(&self) -> (Matrix, Vec<f64>) {
        self.subset(&self.train)
    }

    pub fn test_split(&self) -> (Matrix, Vec<f64>) {
        self.subset(&self.test)
    }

    /// Writes `x0..x{F-1},y` (or the feature names when `use_names`) as CSV.
    pub fn write_csv(&self, path: &Path, use_names: bool) -> Result<()> {
        let fmt_err = |e: csv::Error| Error::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        let mut w = csv::Writer::from_path(path).map_err(fmt_err)?;
        let mut header: Vec<String> = if use_names {
            self.feature_names.clone()
        } else {
            (0..self.n_features()).map(|k| format!("x{k}")).collect()
        };
        header.push("y".into());
        w.write_record(&header).map_err(fmt_err)?;
        for r in 0..self.rows() {
            let mut rec: Vec<String> = self.features.columns().iter().map(|c| c[r].to_string()).collect();
            rec.push(self.target[r].to_string());
            w.write_record(&rec).map_err(fmt_err)?;
        }
        w.flush().map_err(|e| Error::io(path, e))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(rows: usize) -> Dataset {
        let x = Matrix::from_columns(vec![(0..rows).map(|v| v as f64).collect()]).unwrap();
        Dataset::new(x, (0..rows).map(|v| v as f64 * 2.0).collect(), vec!["a".into()]).unwrap()
    }

    #[test]
    fn split_is_disjoint_and_seeded() {
        let d = tiny(100).with_split(0.75, 9).unwrap();
        assert_eq!(d.train_rows().len(), 75);
        assert_eq!(d.test_rows().len(), 25);
        assert!(d.train_rows().iter().all(|r| !d.test_rows().contains(r)));
        let again = tiny(100).with_split(0.75, 9).unwrap();
        assert_eq!(d.train_rows(), again.train_rows());
        let full = tiny(3).with_split(1.0, 1).unwrap();
        assert_eq!(full.train_rows(), [0, 1, 2]);
        assert!(full.test_rows().is_empty());
    }

    #[test]
    fn rejects_inconsistent_shapes() {
        let x = Matrix::from_columns(vec![vec![1.0, 2.0]]).unwrap();
        assert!(Dataset::new(x.clone(), vec![1.0], vec!["a".into()]).is_err());
        assert!(Dataset::new(x.clone(), vec![1.0, 2.0], vec![]).is_err());
        assert!(Dataset::new(x, vec![1.0, f64::NAN], vec!["a".into()]).is_err());
    }
}
