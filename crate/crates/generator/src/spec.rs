//! Drift specification: weighted reference targets and process parameters.

use embedding::LatentVector;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 0.15;
pub const DEFAULT_SIGMA: f64 = 1.0;

/// Parameters of the mean-reverting drift: the process relaxes toward the
/// weighted combination of the reference vectors at rate `alpha`, perturbed
/// by isotropic noise of amplitude `sigma`.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftSpec {
    pub references: Vec<LatentVector>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub sigma: f64,
}

impl DriftSpec {
    pub fn new(references: Vec<LatentVector>, weights: Vec<f64>) -> Result<Self> {
        let spec = Self {
            references,
            weights,
            alpha: DEFAULT_ALPHA,
            sigma: DEFAULT_SIGMA,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        self.alpha = alpha;
        self.validate()?;
        Ok(self)
    }

    pub fn with_sigma(mut self, sigma: f64) -> Result<Self> {
        self.sigma = sigma;
        self.validate()?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.references.first().map_or(0, |r| r.dim())
    }

    pub fn validate(&self) -> Result<()> {
        if self.references.is_empty() {
            return Err(Error::NoReferences);
        }
        if self.references.len() != self.weights.len() {
            return Err(Error::WeightCountMismatch {
                refs: self.references.len(),
                weights: self.weights.len(),
            });
        }
        let d = self.references[0].dim();
        for r in &self.references[1..] {
            if r.dim() != d {
                return Err(Error::DimensionMismatch { a: d, b: r.dim() });
            }
        }
        if let Some((index, &value)) = self
            .weights
            .iter()
            .enumerate()
            .find(|(_, w)| **w < 0.0 || !w.is_finite())
        {
            return Err(Error::NegativeWeight { index, value });
        }
        let sum: f64 = self.weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::WeightSumViolation { sum });
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::NonPositiveAlpha { alpha: self.alpha });
        }
        if self.sigma < 0.0 || !self.sigma.is_finite() {
            return Err(Error::NegativeSigma { sigma: self.sigma });
        }
        Ok(())
    }

    /// Hex SHA-256 over all parameters, for batch headers and artifacts.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.alpha.to_le_bytes());
        h.update(self.sigma.to_le_bytes());
        h.update((self.references.len() as u64).to_le_bytes());
        h.update((self.dim() as u64).to_le_bytes());
        for w in &self.weights {
            h.update(w.to_le_bytes());
        }
        for r in &self.references {
            for v in r.values() {
                h.update(v.to_le_bytes());
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// The drift target m = Σ_k a_k X_k.
///
/// Per-coordinate contributions are summed in value order (not reference
/// order), so reordering the (X_k, a_k) pairs gives a bitwise identical
/// result despite floating-point non-associativity.
pub fn drift_target(spec: &DriftSpec) -> Result<LatentVector> {
    spec.validate()?;
    let d = spec.dim();
    let mut out = vec![0.0f64; d];
    let mut contrib = vec![0.0f64; spec.references.len()];
    for (i, o) in out.iter_mut().enumerate() {
        for (c, (w, r)) in contrib
            .iter_mut()
            .zip(spec.weights.iter().zip(&spec.references))
        {
            *c = w * r.values()[i];
        }
        contrib.sort_unstable_by(|a, b| a.total_cmp(b));
        *o = contrib.iter().sum();
    }
    Ok(LatentVector::new(out)?)
}
