//! Model wrapper shared by both regressor families, feature-tag matching,
//! JSON persistence, and order-independent consensus averaging.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mlp::MlpModel;
use crate::tree::GbdtModel;

/// Feature rows plus the tag of the descriptor layout that produced them.
/// Models refuse queries whose tag differs from their training tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub tag: String,
    pub rows: Vec<Vec<f64>>,
}

impl FeatureMatrix {
    pub fn new(tag: impl Into<String>, rows: Vec<Vec<f64>>) -> FeatureMatrix {
        FeatureMatrix {
            tag: tag.into(),
            rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RegressorModel {
    Gbdt(GbdtModel),
    Mlp(MlpModel),
}

impl RegressorModel {
    pub fn kind(&self) -> &'static str {
        match self {
            RegressorModel::Gbdt(_) => "gbdt",
            RegressorModel::Mlp(_) => "mlp",
        }
    }

    pub fn predict(&self, row: &[f64]) -> Result<f64> {
        match self {
            RegressorModel::Gbdt(m) => m.predict(row),
            RegressorModel::Mlp(m) => m.predict(row),
        }
    }
}

/// On-disk model: the fitted regressor plus the provenance needed to use it
/// safely later (descriptor tag, hash of the training rows).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub kind: String,
    pub fingerprint_tag: String,
    pub training_data_hash: String,
    pub model: RegressorModel,
}

impl ModelFile {
    pub fn new(
        model: RegressorModel,
        fingerprint_tag: impl Into<String>,
        training_data_hash: impl Into<String>,
    ) -> ModelFile {
        ModelFile {
            kind: model.kind().to_string(),
            fingerprint_tag: fingerprint_tag.into(),
            training_data_hash: training_data_hash.into(),
            model,
        }
    }

    /// Predict every row, enforcing the fingerprint tag.
    pub fn predict(&self, features: &FeatureMatrix) -> Result<Vec<f64>> {
        if features.tag != self.fingerprint_tag {
            return Err(Error::FingerprintMismatch {
                expected: self.fingerprint_tag.clone(),
                got: features.tag.clone(),
            });
        }
        features.rows.iter().map(|r| self.model.predict(r)).collect()
    }
}

pub fn save_model(model: &ModelFile, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(model).map_err(|e| Error::BadModelFile {
        detail: e.to_string(),
    })?;
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })
}

pub fn load_model(path: &Path) -> Result<ModelFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    let file: ModelFile = serde_json::from_str(&text).map_err(|e| Error::BadModelFile {
        detail: e.to_string(),
    })?;
    if file.kind != file.model.kind() {
        return Err(Error::BadModelFile {
            detail: format!(
                "kind field `{}` does not match stored model `{}`",
                file.kind,
                file.model.kind()
            ),
        });
    }
    Ok(file)
}

/// Arithmetic-mean consensus over member predictions. Members must agree on
/// the fingerprint tag; per-row sums run in sorted order so the result is
/// bitwise independent of member ordering.
pub fn consensus_predict(members: &[ModelFile], features: &FeatureMatrix) -> Result<Vec<f64>> {
    if members.is_empty() {
        return Err(Error::NoMembers);
    }
    for pair in members.windows(2) {
        if pair[0].fingerprint_tag != pair[1].fingerprint_tag {
            return Err(Error::MixedMembers {
                a: pair[0].fingerprint_tag.clone(),
                b: pair[1].fingerprint_tag.clone(),
            });
        }
    }
    let per_member: Vec<Vec<f64>> = members
        .iter()
        .map(|m| m.predict(features))
        .collect::<Result<_>>()?;
    let n = features.rows.len();
    let mut out = Vec::with_capacity(n);
    let mut scratch = Vec::with_capacity(members.len());
    for row in 0..n {
        scratch.clear();
        scratch.extend(per_member.iter().map(|p| p[row]));
        scratch.sort_by(f64::total_cmp);
        let sum: f64 = scratch.iter().sum();
        out.push(sum / members.len() as f64);
    }
    Ok(out)
}
