//! Post-screen refinement: enumerate single hydroxyl substitutions on a
//! parent structure, then re-run the property and affinity gates on every
//! variant against an index augmented with the variants themselves.

use embedding::LibraryIndex;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gates::{admet_gate, ba_gate, BaMap, GateVerdict, PropertyMap};
use crate::policy::ScreeningPolicy;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantOutcome {
    pub smiles: String,
    pub parent_smiles: String,
    pub logp: f64,
    pub parent_logp: f64,
    pub reconstruction_ok: Option<bool>,
    pub consensus_ba: Option<BaMap>,
    pub consensus_verdict: Option<GateVerdict>,
    pub admet: Option<PropertyMap>,
    pub admet_verdict: Option<GateVerdict>,
    /// Reconstructs, passes both gates, and lowers LogP versus the parent.
    pub improved: bool,
    pub failure: Option<String>,
}

/// Generate hydroxyl variants of `parent_smiles` and evaluate each one:
/// reconstruction against the augmented index, consensus affinity gate,
/// LogP re-estimate, property gate. Per-variant errors are recorded on the
/// outcome, never fatal. Errors out only when the parent itself is invalid
/// or offers no substitutable position.
pub fn logp_optimize(
    parent_smiles: &str,
    index: &LibraryIndex,
    policy: &ScreeningPolicy,
    consensus: &dyn Fn(&str) -> Result<BaMap>,
    properties: &mut dyn FnMut(&str) -> Result<PropertyMap>,
) -> Result<Vec<VariantOutcome>> {
    policy.validate()?;
    let parent = molgraph::parse_smiles(parent_smiles)?;
    let parent_canonical = molgraph::canonical_smiles(&parent);
    let parent_logp = molgraph::logp_estimate(&parent).value;
    let variants = molgraph::hydroxyl_variants(&parent)?;

    let variant_smiles: Vec<String> =
        variants.iter().map(molgraph::canonical_smiles).collect();
    let (augmented, rejected) = index.extended(&variant_smiles);
    let rejected: std::collections::BTreeMap<String, String> = rejected
        .into_iter()
        .map(|r| (r.input, r.error.to_string()))
        .collect();

    let mut outcomes = Vec::with_capacity(variants.len());
    for (molecule, smiles) in variants.iter().zip(&variant_smiles) {
        let mut outcome = VariantOutcome {
            smiles: smiles.clone(),
            parent_smiles: parent_canonical.clone(),
            logp: molgraph::logp_estimate(molecule).value,
            parent_logp,
            reconstruction_ok: None,
            consensus_ba: None,
            consensus_verdict: None,
            admet: None,
            admet_verdict: None,
            improved: false,
            failure: None,
        };
        if let Some(reason) = rejected.get(smiles) {
            outcome.failure = Some(format!("index rejected variant: {reason}"));
        } else if let Err(e) = evaluate_variant(
            molecule,
            smiles,
            &augmented,
            policy,
            consensus,
            properties,
            &mut outcome,
        ) {
            outcome.failure = Some(e.to_string());
        }
        outcomes.push(outcome);
    }
    Ok(outcomes)
}

fn evaluate_variant(
    molecule: &molgraph::Molecule,
    smiles: &str,
    augmented: &LibraryIndex,
    policy: &ScreeningPolicy,
    consensus: &dyn Fn(&str) -> Result<BaMap>,
    properties: &mut dyn FnMut(&str) -> Result<PropertyMap>,
    outcome: &mut VariantOutcome,
) -> Result<()> {
    let reconstructed = augmented.reconstruction_check(molecule)?;
    outcome.reconstruction_ok = Some(reconstructed);

    let ba = consensus(smiles)?;
    let ba_verdict = ba_gate(&ba, policy)?;
    outcome.consensus_ba = Some(ba);
    outcome.consensus_verdict = Some(ba_verdict.clone());

    let mut props = properties(smiles)?;
    // The optimizer's whole point is the LogP delta: gate on the fresh
    // structural estimate rather than any stale upstream value.
    props.insert(crate::policy::P_LOGP.to_string(), outcome.logp);
    let admet_verdict = admet_gate(&props, policy)?;
    outcome.admet = Some(props);
    outcome.admet_verdict = Some(admet_verdict.clone());

    outcome.improved = reconstructed
        && ba_verdict.pass
        && admet_verdict.pass
        && outcome.logp < outcome.parent_logp;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admet::local_surrogates;
    use crate::error::Error;
    use embedding::EncoderConfig;
    use molgraph::Element;

    fn small_index() -> LibraryIndex {
        let inputs = ["CCO", "CCC", "Cc1ccccc1", "CCN", "CO", "c1ccccc1"];
        let (index, rejected) = LibraryIndex::build(EncoderConfig::default(), inputs);
        assert!(rejected.is_empty());
        index
    }

    fn passing_ba(_: &str) -> Result<BaMap> {
        Ok(BaMap::from([
            ("MOR".to_string(), -10.0),
            ("KOR".to_string(), -10.0),
            ("DOR".to_string(), -10.0),
            ("hERG".to_string(), -7.0),
        ]))
    }

    fn oxygen_count(molecule: &molgraph::Molecule) -> usize {
        molecule
            .atoms()
            .iter()
            .filter(|a| a.element == Element::O)
            .count()
    }

    #[test]
    fn every_variant_gains_exactly_one_oxygen_and_loses_logp() {
        let index = small_index();
        let policy = ScreeningPolicy {
            admet: crate::policy::AdmetRules::default().surrogate_only(),
            ..ScreeningPolicy::default()
        };
        let mut props = |smiles: &str| -> Result<PropertyMap> {
            Ok(local_surrogates(&molgraph::parse_smiles(smiles)?))
        };
        let outcomes =
            logp_optimize("Cc1ccccc1", &index, &policy, &passing_ba, &mut props)
                .expect("toluene has substitutable carbons");
        assert_eq!(outcomes.len(), 4);
        let parent = molgraph::parse_smiles("Cc1ccccc1").unwrap();
        let parent_oxygens = oxygen_count(&parent);
        for outcome in &outcomes {
            let variant = molgraph::parse_smiles(&outcome.smiles).unwrap();
            assert_eq!(oxygen_count(&variant), parent_oxygens + 1);
            assert!(
                outcome.logp < outcome.parent_logp,
                "hydroxyl must lower LogP: {} vs parent {}",
                outcome.logp,
                outcome.parent_logp
            );
            assert_eq!(outcome.failure, None);
            assert_eq!(outcome.reconstruction_ok, Some(true));
        }
    }

    #[test]
    fn fully_substituted_parents_are_rejected() {
        let index = small_index();
        let policy = ScreeningPolicy::default();
        let mut props = |_: &str| -> Result<PropertyMap> { Ok(PropertyMap::new()) };
        let err = logp_optimize("ClC(Cl)(Cl)Cl", &index, &policy, &passing_ba, &mut props)
            .unwrap_err();
        assert!(matches!(
            err,
            Error::Molgraph(molgraph::Error::NoSubstitutablePosition)
        ));
    }

    #[test]
    fn scorer_failures_are_recorded_per_variant() {
        let index = small_index();
        let policy = ScreeningPolicy {
            admet: crate::policy::AdmetRules::default().surrogate_only(),
            ..ScreeningPolicy::default()
        };
        let failing_ba = |_: &str| -> Result<BaMap> {
            Err(Error::MissingTarget {
                name: "MOR".to_string(),
            })
        };
        let mut props = |smiles: &str| -> Result<PropertyMap> {
            Ok(local_surrogates(&molgraph::parse_smiles(smiles)?))
        };
        let outcomes =
            logp_optimize("CC", &index, &policy, &failing_ba, &mut props).unwrap();
        assert!(!outcomes.is_empty());
        for outcome in &outcomes {
            assert!(outcome.failure.is_some());
            assert!(!outcome.improved);
        }
    }
}
