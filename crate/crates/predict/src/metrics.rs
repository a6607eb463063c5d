//! Regression quality metrics: Pearson correlation and root-mean-square
//! error.

use crate::error::{Error, Result};

fn check_pair(a: &[f64], b: &[f64], needed: usize) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.len() < needed {
        return Err(Error::TooFewRows {
            rows: a.len(),
            needed,
        });
    }
    Ok(())
}

/// Pearson correlation coefficient. Errors if either side has zero
/// variance (the coefficient is undefined there).
pub fn pearson_r(a: &[f64], b: &[f64]) -> Result<f64> {
    check_pair(a, b, 2)?;
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.iter().zip(b) {
        let dx = x - ma;
        let dy = y - mb;
        cov += dx * dy;
        va += dx * dx;
        vb += dy * dy;
    }
    if va == 0.0 || vb == 0.0 {
        return Err(Error::InvalidParams {
            detail: "correlation undefined: one side has zero variance".into(),
        });
    }
    Ok(cov / (va.sqrt() * vb.sqrt()))
}

/// Root-mean-square error between predictions and truth.
pub fn rmse(predictions: &[f64], truth: &[f64]) -> Result<f64> {
    check_pair(predictions, truth, 1)?;
    let total: f64 = predictions
        .iter()
        .zip(truth)
        .map(|(p, t)| (p - t) * (p - t))
        .sum();
    Ok((total / predictions.len() as f64).sqrt())
}
