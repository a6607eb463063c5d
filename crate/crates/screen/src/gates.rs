//! Pass/fail gates. Verdicts are pure functions of (values, policy): the
//! audit path recomputes them from persisted records and demands bit-exact
//! agreement.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::policy::{
    ScreeningPolicy, P_CACO2, P_F20, P_FDAMDD, P_LOGP, P_LOGS, P_SAS, P_T_HALF,
};

/// Predicted binding affinities keyed by canonical target name.
pub type BaMap = BTreeMap<String, f64>;

/// Property values keyed by canonical index name.
pub type PropertyMap = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateVerdict {
    pub pass: bool,
    /// One entry per failed check; empty iff `pass`.
    pub reasons: Vec<String>,
}

impl GateVerdict {
    fn from_reasons(reasons: Vec<String>) -> GateVerdict {
        GateVerdict {
            pass: reasons.is_empty(),
            reasons,
        }
    }
}

fn require(predictions: &BaMap, name: &str) -> Result<f64> {
    predictions
        .get(name)
        .copied()
        .ok_or_else(|| Error::MissingTarget { name: name.into() })
}

/// Affinity gate: all three opioid targets must bind tighter than their
/// bound (strictly below), the anti-target weaker than its bound (strictly
/// above). Reasons name every violated target.
pub fn ba_gate(predictions: &BaMap, policy: &ScreeningPolicy) -> Result<GateVerdict> {
    let mut reasons = Vec::new();
    for (name, bound) in [
        ("MOR", policy.ba.mor_max),
        ("KOR", policy.ba.kor_max),
        ("DOR", policy.ba.dor_max),
    ] {
        let value = require(predictions, name)?;
        if !(value < bound) {
            reasons.push(format!("{name} affinity {value} not < {bound}"));
        }
    }
    let herg = require(predictions, "hERG")?;
    if !(herg > policy.ba.herg_min) {
        reasons.push(format!(
            "hERG affinity {herg} not > {}",
            policy.ba.herg_min
        ));
    }
    Ok(GateVerdict::from_reasons(reasons))
}

/// Property gate over the policy's enabled indexes. Inclusive bounds except
/// where the policy is explicitly exclusive (cell permeability's lower
/// bound, synthetic-accessibility's upper bound). Missing enabled indexes
/// are an error listing every absentee.
pub fn admet_gate(properties: &PropertyMap, policy: &ScreeningPolicy) -> Result<GateVerdict> {
    let missing: Vec<String> = policy
        .admet
        .enabled
        .iter()
        .filter(|name| !properties.contains_key(*name))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingProperty { missing });
    }
    let rules = &policy.admet;
    let mut reasons = Vec::new();
    for name in &rules.enabled {
        let value = properties[name];
        let failure = match name.as_str() {
            P_FDAMDD => (!(value <= rules.fdamdd_max))
                .then(|| format!("{name} {value} not <= {}", rules.fdamdd_max)),
            P_F20 => (!(value <= rules.f20_max))
                .then(|| format!("{name} {value} not <= {}", rules.f20_max)),
            P_T_HALF => (!(value <= rules.t_half_max))
                .then(|| format!("{name} {value} not <= {}", rules.t_half_max)),
            P_LOGP => {
                let (lo, hi) = rules.active_logp_range();
                (!(value >= lo && value <= hi))
                    .then(|| format!("{name} {value} outside [{lo}, {hi}]"))
            }
            P_LOGS => {
                let (lo, hi) = rules.logs_range;
                (!(value >= lo && value <= hi))
                    .then(|| format!("{name} {value} outside [{lo}, {hi}]"))
            }
            P_CACO2 => (!(value > rules.caco2_min))
                .then(|| format!("{name} {value} not > {}", rules.caco2_min)),
            P_SAS => (!(value < rules.sas_max))
                .then(|| format!("{name} {value} not < {}", rules.sas_max)),
            other => return Err(Error::UnknownIndex { name: other.into() }),
        };
        reasons.extend(failure);
    }
    Ok(GateVerdict::from_reasons(reasons))
}

/// Novelty gate: maximum latent similarity to the training set must sit
/// inside the policy band (inclusive).
pub fn novelty_gate(max_to_training: f64, policy: &ScreeningPolicy) -> GateVerdict {
    let band = &policy.novelty;
    let mut reasons = Vec::new();
    if !(max_to_training >= band.min && max_to_training <= band.max) {
        reasons.push(format!(
            "max training similarity {max_to_training} outside [{}, {}]",
            band.min, band.max
        ));
    }
    GateVerdict::from_reasons(reasons)
}
