//! Batch fitness and full-split R².

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::data::metrics::{linear_scaling_fit, total_sum_of_squares};
use crate::data::Matrix;
use crate::error::{Error, Result};
use crate::expr::{Activity, Evaluator, Genotype};

/// Selection fitness of an individual on the current batch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessRecord {
    /// Mean squared error of the (scaled) predictions; `+inf` when any
    /// prediction is non-finite.
    pub mse: f64,
    /// Intercept and slope `(a, b)` when linear scaling is on.
    pub scaling: Option<(f64, f64)>,
}

impl FitnessRecord {
    pub fn worst() -> Self {
        FitnessRecord {
            mse: f64::INFINITY,
            scaling: None,
        }
    }
}

/// Scores predictions against targets, optionally after a least-squares
/// affine fit.
pub fn score(predictions: &[f64], targets: &[f64], linear_scaling: bool) -> FitnessRecord {
    if predictions.iter().any(|p| !p.is_finite()) {
        return FitnessRecord::worst();
    }
    let (a, b) = if linear_scaling {
        linear_scaling_fit(predictions, targets).unwrap_or((0.0, 1.0))
    } else {
        (0.0, 1.0)
    };
    let sse: f64 = predictions
        .iter()
        .zip(targets)
        .map(|(p, t)| {
            let e = t - (a + b * p);
            e * e
        })
        .sum();
    let mse = sse / targets.len() as f64;
    FitnessRecord {
        mse: if mse.is_finite() { mse } else { f64::INFINITY },
        scaling: linear_scaling.then_some((a, b)),
    }
}

/// Applies `(a, b)` to raw predictions.
pub fn apply_scaling(predictions: &mut [f64], scaling: Option<(f64, f64)>) {
    if let Some((a, b)) = scaling {
        for p in predictions {
            *p = a + b * *p;
        }
    }
}

/// Evaluation context over the training split with optional batching.
#[derive(Debug)]
pub struct FitnessEvaluator {
    train_x: Matrix,
    train_y: Vec<f64>,
    train_ss_tot: f64,
    batch: Option<(Matrix, Vec<f64>)>,
    max_batch: usize,
    linear_scaling: bool,
    evaluator: Evaluator,
    buffer: Vec<f64>,
    evaluations: u64,
}

impl FitnessEvaluator {
    pub fn new(train_x: Matrix, train_y: Vec<f64>, linear_scaling: bool, max_batch: usize) -> Result<Self> {
        if train_y.is_empty() || train_x.cols() == 0 {
            return Err(Error::InvalidDataset("training split has no rows or no features".into()));
        }
        let train_ss_tot = total_sum_of_squares(&train_y);
        if train_ss_tot == 0.0 {
            return Err(Error::ZeroTargetVariance);
        }
        Ok(FitnessEvaluator {
            train_x,
            train_y,
            train_ss_tot,
            batch: None,
            max_batch: max_batch.max(1),
            linear_scaling,
            evaluator: Evaluator::new(),
            buffer: Vec::new(),
            evaluations: 0,
        })
    }

    pub fn is_batched(&self) -> bool {
        self.train_y.len() > self.max_batch
    }

    pub fn train_rows(&self) -> usize {
        self.train_y.len()
    }

    /// Draws a fresh uniform batch when the training split exceeds the
    /// maximum batch size. Returns whether a batch was drawn.
    pub fn resample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        if !self.is_batched() {
            return false;
        }
        let mut rows = rand::seq::index::sample(rng, self.train_y.len(), self.max_batch).into_vec();
        rows.sort_unstable();
        let y = rows.iter().map(|&r| self.train_y[r]).collect();
        self.batch = Some((self.train_x.select_rows(&rows), y));
        true
    }

    /// Batch fitness of `genotype`; counts one evaluation.
    pub fn evaluate(&mut self, genotype: &Genotype, activity: &Activity) -> FitnessRecord {
        self.evaluations += 1;
        let (x, y) = match &self.batch {
            Some((x, y)) => (x, y.as_slice()),
            None => (&self.train_x, self.train_y.as_slice()),
        };
        match self.evaluator.evaluate_with(genotype, activity, x, &mut self.buffer) {
            Ok(()) => score(&self.buffer, y, self.linear_scaling),
            Err(_) => FitnessRecord::worst(),
        }
    }

    /// Batch fitness that gives up as soon as the running squared error
    /// proves the result exceeds `bound` (or reaches it when `strict`).
    /// A completed evaluation is bit-identical to [`FitnessEvaluator::evaluate`];
    /// an abandoned one returns [`FitnessRecord::worst`]. Without linear
    /// scaling only; with it this is a plain evaluation. Counts one
    /// evaluation either way.
    pub fn evaluate_bounded(
        &mut self,
        genotype: &Genotype,
        activity: &Activity,
        bound: f64,
        strict: bool,
    ) -> FitnessRecord {
        if self.linear_scaling || !bound.is_finite() {
            return self.evaluate(genotype, activity);
        }
        self.evaluations += 1;
        let (x, y) = match &self.batch {
            Some((x, y)) => (x, y.as_slice()),
            None => (&self.train_x, self.train_y.as_slice()),
        };
        let n = y.len() as f64;
        let mut sse = 0.0;
        let mut finite = true;
        let done = self.evaluator.evaluate_blocks(genotype, activity, x, |start, block| {
            if block.iter().any(|p| !p.is_finite()) {
                finite = false;
                return false;
            }
            for (p, t) in block.iter().zip(&y[start..]) {
                let e = t - (0.0 + 1.0 * p);
                sse += e * e;
            }
            let partial = sse / n;
            if strict { partial < bound } else { partial <= bound }
        });
        match done {
            Ok(true) if finite => {
                let mse = sse / n;
                FitnessRecord {
                    mse: if mse.is_finite() { mse } else { f64::INFINITY },
                    scaling: None,
                }
            }
            _ => FitnessRecord::worst(),
        }
    }

    /// R² on the full training split. Derived from the record when the batch
    /// is the full split, otherwise computed by a separate pass that is not
    /// counted as an evaluation.
    pub fn r2_full(&mut self, genotype: &Genotype, record: &FitnessRecord) -> f64 {
        if !self.is_batched() {
            return self.r2_from_mse(record.mse);
        }
        let activity = Activity::of(genotype);
        match self.evaluator.evaluate_with(genotype, &activity, &self.train_x, &mut self.buffer) {
            Ok(()) => {
                let full = score(&self.buffer, &self.train_y, self.linear_scaling);
                self.r2_from_mse(full.mse)
            }
            Err(_) => f64::NEG_INFINITY,
        }
    }

    fn r2_from_mse(&self, mse: f64) -> f64 {
        if mse.is_finite() {
            1.0 - mse * self.train_y.len() as f64 / self.train_ss_tot
        } else {
            f64::NEG_INFINITY
        }
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_and_scaled_scores() {
        let y = [1.0, 2.0, 4.0, 8.0];
        assert_eq!(score(&y, &y, false).mse, 0.0);
        let p: Vec<f64> = y.iter().map(|v| 2.0 * v + 3.0).collect();
        let r = score(&p, &y, true);
        let (a, b) = r.scaling.unwrap();
        assert!((a + 1.5).abs() < 1e-12 && (b - 0.5).abs() < 1e-12);
        assert!(r.mse < 1e-24);
        let r = score(&[3.0; 4], &y, true);
        assert_eq!(r.scaling, Some((3.75, 0.0)));
        assert_eq!(score(&[f64::NAN, 1.0, 1.0, 1.0], &y, false).mse, f64::INFINITY);
    }

    #[test]
    fn batches_are_drawn_only_when_needed() {
        let x = Matrix::from_columns(vec![(0..3000).map(f64::from).collect()]).unwrap();
        let y: Vec<f64> = (0..3000).map(|v| f64::from(v) * 0.5).collect();
        let mut f = FitnessEvaluator::new(x.clone(), y.clone(), false, 2048).unwrap();
        assert!(f.resample(&mut ChaCha8Rng::seed_from_u64(1)));
        assert_eq!(f.batch.as_ref().unwrap().1.len(), 2048);
        let mut g = FitnessEvaluator::new(x, y, false, 4000).unwrap();
        assert!(!g.resample(&mut ChaCha8Rng::seed_from_u64(1)));
    }

    #[test]
    fn bounded_matches_full_or_gives_up() {
        use crate::expr::Tree;
        let x = Matrix::from_columns(vec![(0..1000).map(|v| f64::from(v) * 0.01).collect()]).unwrap();
        let y: Vec<f64> = x.column(0).iter().map(|v| v.sin()).collect();
        let mut f = FitnessEvaluator::new(x, y, false, 2048).unwrap();
        let g = Genotype::single(Tree::from_expression(2, "cos x0", crate::expr::Symbol::Feature(0)).unwrap()).unwrap();
        let act = Activity::of(&g);
        let full = f.evaluate(&g, &act);
        assert_eq!(f.evaluate_bounded(&g, &act, full.mse, false), full);
        assert_eq!(f.evaluate_bounded(&g, &act, f64::INFINITY, true), full);
        assert_eq!(f.evaluate_bounded(&g, &act, full.mse, true).mse, f64::INFINITY);
        assert_eq!(f.evaluate_bounded(&g, &act, full.mse * 0.5, false).mse, f64::INFINITY);
        assert_eq!(f.evaluations(), 5);
    }
}
