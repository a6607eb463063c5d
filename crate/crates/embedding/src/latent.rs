//! Real-valued latent vectors and the continuous Tanimoto similarity used to
//! compare them.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LatentVector {
    values: Vec<f64>,
}

impl LatentVector {
    /// Wrap a raw vector, rejecting NaN/Inf entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry { index });
        }
        Ok(Self { values })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Root-mean-square of the entries (norm / sqrt(dim)).
    pub fn rms(&self) -> f64 {
        if self.values.is_empty() {
            0.0
        } else {
            self.norm() / (self.values.len() as f64).sqrt()
        }
    }

    pub fn dot(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                a: self.dim(),
                b: other.dim(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

/// Continuous Tanimoto similarity a·b / (|a|² + |b|² − a·b).
///
/// For real vectors the value lives in [−1/3, 1]: it is 1 exactly when
/// a = b ≠ 0, and the lower bound is attained in the antipodal direction.
pub fn tanimoto_latent(a: &LatentVector, b: &LatentVector) -> Result<f64> {
    let dot = a.dot(b)?;
    let na = a.values.iter().map(|v| v * v).sum::<f64>();
    let nb = b.values.iter().map(|v| v * v).sum::<f64>();
    if na == 0.0 && nb == 0.0 {
        return Err(Error::BothZero);
    }
    Ok(dot / (na + nb - dot))
}
