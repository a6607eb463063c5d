//! Latent-space similarity scoring against references and the training
//! library.

use embedding::{tanimoto_latent, LatentVector, LibraryIndex};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoveltyScores {
    /// Similarity to each reference, in the order the references were given.
    pub per_reference: Vec<f64>,
    /// Highest similarity over the whole training library.
    pub max_to_training: f64,
    /// Canonical SMILES of the library entry realizing the maximum.
    pub nearest_training: String,
}

/// Score one candidate latent against the references and every library
/// entry (exhaustive scan).
pub fn novelty_scores(
    candidate: &LatentVector,
    references: &[LatentVector],
    index: &LibraryIndex,
) -> Result<NoveltyScores> {
    if index.is_empty() {
        return Err(Error::EmptyIndex);
    }
    let per_reference = references
        .iter()
        .map(|r| tanimoto_latent(candidate, r))
        .collect::<embedding::Result<Vec<f64>>>()?;
    let mut max_to_training = f64::NEG_INFINITY;
    let mut nearest_training = String::new();
    for entry in index.entries() {
        let score = tanimoto_latent(candidate, &entry.vector)?;
        if score > max_to_training {
            max_to_training = score;
            nearest_training = entry.smiles.clone();
        }
    }
    Ok(NoveltyScores {
        per_reference,
        max_to_training,
        nearest_training,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use embedding::EncoderConfig;

    fn toy_index() -> LibraryIndex {
        let (index, rejected) = LibraryIndex::build(
            EncoderConfig::default(),
            ["CCO", "CCC", "c1ccccc1", "CC(C)O", "CCN"],
        );
        assert!(rejected.is_empty());
        index
    }

    #[test]
    fn identical_latent_scores_one() {
        let index = toy_index();
        let ethanol = molgraph::parse_smiles("CCO").unwrap();
        let latent = index.encode(&ethanol);
        let scores = novelty_scores(&latent, &[latent.clone()], &index).unwrap();
        assert!((scores.per_reference[0] - 1.0).abs() < 1e-12);
        assert!((scores.max_to_training - 1.0).abs() < 1e-12);
        assert_eq!(
            scores.nearest_training,
            molgraph::canonical_smiles(&ethanol)
        );
    }

    #[test]
    fn orthogonal_latents_score_zero() {
        let index = toy_index();
        let dim = index.entries()[0].vector.dim();
        let mut a = vec![0.0; dim];
        let mut b = vec![0.0; dim];
        a[0] = 1.0;
        b[1] = 1.0;
        let a = LatentVector::new(a).unwrap();
        let b = LatentVector::new(b).unwrap();
        let scores = novelty_scores(&a, &[b], &index).unwrap();
        assert_eq!(scores.per_reference[0], 0.0);
    }

    #[test]
    fn max_matches_exhaustive_scan() {
        let index = toy_index();
        let candidate = index.encode(&molgraph::parse_smiles("CCCO").unwrap());
        let scores = novelty_scores(&candidate, &[], &index).unwrap();
        let best = index
            .entries()
            .iter()
            .map(|e| tanimoto_latent(&candidate, &e.vector).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(scores.max_to_training, best);
    }

    #[test]
    fn empty_index_is_an_error() {
        let (index, _) = LibraryIndex::build(EncoderConfig::default(), Vec::<String>::new());
        let v = LatentVector::new(vec![1.0; 4]).unwrap();
        assert_eq!(
            novelty_scores(&v, &[], &index),
            Err(Error::EmptyIndex)
        );
    }
}
