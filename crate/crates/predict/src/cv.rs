//! Seeded k-fold cross-validation with per-fold Pearson R and RMSE.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::metrics::{pearson_r, rmse};

#[derive(Debug, Clone, PartialEq)]
pub struct FoldScore {
    pub fold: usize,
    pub r: f64,
    pub rmse: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub folds: Vec<FoldScore>,
    pub mean_r: f64,
    pub mean_rmse: f64,
}

impl fmt::Display for CvReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fold in &self.folds {
            writeln!(
                f,
                "fold {}: r={:.4} rmse={:.4}",
                fold.fold, fold.r, fold.rmse
            )?;
        }
        write!(f, "mean:   r={:.4} rmse={:.4}", self.mean_r, self.mean_rmse)
    }
}

/// Shuffle `0..n` with the seed and cut it into `k` folds whose sizes
/// differ by at most one.
pub fn kfold_indices(n: usize, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::InvalidParams {
            detail: format!("k-fold needs k >= 2, got {k}"),
        });
    }
    if n < k {
        return Err(Error::TooFewRows { rows: n, needed: k });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let base = n / k;
    let extra = n % k;
    let mut folds = Vec::with_capacity(k);
    let mut at = 0;
    for fold in 0..k {
        let size = base + usize::from(fold < extra);
        folds.push(order[at..at + size].to_vec());
        at += size;
    }
    Ok(folds)
}

/// Run k-fold cross-validation. `fit_predict` receives the training rows,
/// training labels and held-out rows, and returns held-out predictions.
pub fn kfold_cv<F>(
    x: &[Vec<f64>],
    y: &[f64],
    k: usize,
    seed: u64,
    mut fit_predict: F,
) -> Result<CvReport>
where
    F: FnMut(&[Vec<f64>], &[f64], &[Vec<f64>]) -> Result<Vec<f64>>,
{
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let folds = kfold_indices(x.len(), k, seed)?;
    let mut scores = Vec::with_capacity(k);
    for (fold_id, holdout) in folds.iter().enumerate() {
        let mut in_holdout = vec![false; x.len()];
        for &i in holdout {
            in_holdout[i] = true;
        }
        let mut train_x = Vec::with_capacity(x.len() - holdout.len());
        let mut train_y = Vec::with_capacity(x.len() - holdout.len());
        for i in 0..x.len() {
            if !in_holdout[i] {
                train_x.push(x[i].clone());
                train_y.push(y[i]);
            }
        }
        let test_x: Vec<Vec<f64>> = holdout.iter().map(|&i| x[i].clone()).collect();
        let test_y: Vec<f64> = holdout.iter().map(|&i| y[i]).collect();
        let predictions = fit_predict(&train_x, &train_y, &test_x)?;
        if predictions.len() != test_y.len() {
            return Err(Error::DimensionMismatch {
                expected: test_y.len(),
                got: predictions.len(),
            });
        }
        scores.push(FoldScore {
            fold: fold_id + 1,
            r: pearson_r(&predictions, &test_y)?,
            rmse: rmse(&predictions, &test_y)?,
        });
    }
    let kf = k as f64;
    let mean_r = scores.iter().map(|s| s.r).sum::<f64>() / kf;
    let mean_rmse = scores.iter().map(|s| s.rmse).sum::<f64>() / kf;
    Ok(CvReport {
        folds: scores,
        mean_r,
        mean_rmse,
    })
}
