use crate::error::{Error, Result};

fn check_lengths(predictions: &[f64], targets: &[f64]) -> Result<()> {
    if predictions.len() != targets.len() {
        return Err(Error::SizeMismatch {
            expected: targets.len(),
            found: predictions.len(),
        });
    }
    if targets.is_empty() {
        return Err(Error::InvalidDataset("no rows to score".into()));
    }
    Ok(())
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Mean squared error.
pub fn mse(predictions: &[f64], targets: &[f64]) -> f64 {
    predictions
        .iter()
        .zip(targets)
        .map(|(p, t)| (t - p) * (t - p))
        .sum::<f64>()
        / targets.len() as f64
}

/// Sum of squared deviations from the mean.
pub fn total_sum_of_squares(targets: &[f64]) -> f64 {
    let m = mean(targets);
    targets.iter().map(|t| (t - m) * (t - m)).sum()
}

/// Coefficient of determination, `1 - SS_res / SS_tot`.
///
/// Any non-finite prediction gives `-inf`. Constant targets are an error.
pub fn r_squared(predictions: &[f64], targets: &[f64]) -> Result<f64> {
    check_lengths(predictions, targets)?;
    let ss_tot = total_sum_of_squares(targets);
    if ss_tot == 0.0 {
        return Err(Error::ZeroTargetVariance);
    }
    if predictions.iter().any(|p| !p.is_finite()) {
        return Ok(f64::NEG_INFINITY);
    }
    let ss_res: f64 = predictions.iter().zip(targets).map(|(p, t)| (t - p) * (t - p)).sum();
    if !ss_res.is_finite() {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(1.0 - ss_res / ss_tot)
}

/// Least-squares intercept and slope `(a, b)` for `targets ≈ a + b * predictions`.
///
/// Constant predictions give `(mean(targets), 0)`.
pub fn linear_scaling_fit(predictions: &[f64], targets: &[f64]) -> Result<(f64, f64)> {
    check_lengths(predictions, targets)?;
    let mp = mean(predictions);
    let mt = mean(targets);
    let mut cov = 0.0;
    let mut var = 0.0;
    for (p, t) in predictions.iter().zip(targets) {
        let dp = p - mp;
        cov += dp * (t - mt);
        var += dp * dp;
    }
    if var == 0.0 || !var.is_finite() {
        return Ok((mt, 0.0));
    }
    let b = cov / var;
    Ok((mt - b * mp, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_reference_points() {
        let y = [1.0, 2.0, 3.0];
        assert_eq!(r_squared(&y, &y).unwrap(), 1.0);
        assert_eq!(r_squared(&[2.0, 2.0, 2.0], &y).unwrap(), 0.0);
        // SS_res = 1, SS_tot = 2
        assert_eq!(r_squared(&[1.0, 2.0, 4.0], &y).unwrap(), 0.5);
    }

    #[test]
    fn r2_errors() {
        assert!(matches!(r_squared(&[1.0, 2.0], &[3.0, 3.0]), Err(Error::ZeroTargetVariance)));
        assert!(r_squared(&[1.0], &[1.0, 2.0]).is_err());
        assert!(r_squared(&[], &[]).is_err());
        assert_eq!(r_squared(&[f64::NAN, 1.0], &[0.0, 1.0]).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn scaling_reference_points() {
        let y = [1.0, 4.0, -2.0, 0.5];
        assert_eq!(linear_scaling_fit(&y, &y).unwrap(), (0.0, 1.0));
        let p = [0.0, 1.0, 2.0, 3.0];
        let t: Vec<f64> = p.iter().map(|v| 3.0 + 2.0 * v).collect();
        let (a, b) = linear_scaling_fit(&p, &t).unwrap();
        assert!((a - 3.0).abs() < 1e-12 && (b - 2.0).abs() < 1e-12);
        let (a, b) = linear_scaling_fit(&[5.0; 4], &y).unwrap();
        assert_eq!((a, b), (mean(&y), 0.0));
    }
}
