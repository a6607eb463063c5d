//! Screening policy: per-target affinity thresholds, property ranges with a
//! strict/relaxed lipophilicity mode, and the latent-similarity novelty band.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical names of the four affinity targets.
pub const TARGET_NAMES: [&str; 4] = ["MOR", "KOR", "DOR", "hERG"];

/// Canonical names of the property indexes the gate knows.
pub const P_FDAMDD: &str = "FDAMDD";
pub const P_F20: &str = "F20%";
pub const P_T_HALF: &str = "T1/2";
pub const P_LOGP: &str = "LogP";
pub const P_LOGS: &str = "LogS";
pub const P_CACO2: &str = "Caco-2";
pub const P_SAS: &str = "SAS";
pub const ALL_PROPERTIES: [&str; 7] = [P_FDAMDD, P_F20, P_T_HALF, P_LOGP, P_LOGS, P_CACO2, P_SAS];

/// Affinity thresholds in kcal/mol. The three opioid receptors pass on
/// predicted BA strictly below their bound (tighter binding); the
/// anti-target passes strictly above its bound (weaker binding).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaThresholds {
    pub mor_max: f64,
    pub kor_max: f64,
    pub dor_max: f64,
    pub herg_min: f64,
}

impl Default for BaThresholds {
    fn default() -> BaThresholds {
        BaThresholds {
            mor_max: -9.54,
            kor_max: -9.54,
            dor_max: -9.54,
            herg_min: -8.18,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogPMode {
    /// Lipophilicity must sit in `logp_range`.
    Strict,
    /// Lipophilicity may roam the wider `logp_relaxed_range`.
    Relaxed,
}

/// Property ranges. Toxicity/absorption scores are classifier probabilities
/// where lower is better; the inclusive `tox_max` bound of 0.3 keeps the
/// "excellent" band only — raise it to 0.7 to admit the "medium" band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmetRules {
    pub fdamdd_max: f64,
    pub f20_max: f64,
    pub t_half_max: f64,
    pub logp_range: (f64, f64),
    pub logp_relaxed_range: (f64, f64),
    pub logp_mode: LogPMode,
    pub logs_range: (f64, f64),
    /// Exclusive lower bound (pass requires value strictly greater).
    pub caco2_min: f64,
    /// Exclusive upper bound (pass requires value strictly less).
    pub sas_max: f64,
    /// Which indexes this campaign actually checks; absentees among these
    /// are an error, anything else is ignored.
    pub enabled: BTreeSet<String>,
}

impl Default for AdmetRules {
    fn default() -> AdmetRules {
        AdmetRules {
            fdamdd_max: 0.3,
            f20_max: 0.3,
            t_half_max: 0.3,
            logp_range: (0.0, 3.0),
            logp_relaxed_range: (0.0, 5.0),
            logp_mode: LogPMode::Strict,
            logs_range: (-4.0, 0.5),
            caco2_min: -5.15,
            sas_max: 6.0,
            enabled: ALL_PROPERTIES.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl AdmetRules {
    /// The range the lipophilicity check uses under the current mode.
    pub fn active_logp_range(&self) -> (f64, f64) {
        match self.logp_mode {
            LogPMode::Strict => self.logp_range,
            LogPMode::Relaxed => self.logp_relaxed_range,
        }
    }

    /// Surrogate-only campaigns check just the locally computable indexes.
    pub fn surrogate_only(mut self) -> AdmetRules {
        self.enabled = [P_LOGP, P_SAS].iter().map(|s| s.to_string()).collect();
        self
    }

    /// Widen the toxicity/absorption bands from "excellent" to include
    /// "medium" (0.3, 0.7].
    pub fn include_medium_band(mut self) -> AdmetRules {
        self.fdamdd_max = 0.7;
        self.f20_max = 0.7;
        self.t_half_max = 0.7;
        self
    }
}

/// Accepted window on the maximum latent-similarity to the training set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoveltyBand {
    pub min: f64,
    pub max: f64,
}

impl Default for NoveltyBand {
    fn default() -> NoveltyBand {
        NoveltyBand { min: 0.0, max: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ScreeningPolicy {
    pub ba: BaThresholds,
    pub admet: AdmetRules,
    pub novelty: NoveltyBand,
}

impl ScreeningPolicy {
    pub fn validate(&self) -> Result<()> {
        let thresholds = [
            self.ba.mor_max,
            self.ba.kor_max,
            self.ba.dor_max,
            self.ba.herg_min,
            self.admet.fdamdd_max,
            self.admet.f20_max,
            self.admet.t_half_max,
            self.admet.logp_range.0,
            self.admet.logp_range.1,
            self.admet.logp_relaxed_range.0,
            self.admet.logp_relaxed_range.1,
            self.admet.logs_range.0,
            self.admet.logs_range.1,
            self.admet.caco2_min,
            self.admet.sas_max,
            self.novelty.min,
            self.novelty.max,
        ];
        if thresholds.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidPolicy {
                detail: "all thresholds must be finite".into(),
            });
        }
        for (label, (lo, hi)) in [
            ("LogP", self.admet.logp_range),
            ("relaxed LogP", self.admet.logp_relaxed_range),
            ("LogS", self.admet.logs_range),
            ("novelty band", (self.novelty.min, self.novelty.max)),
        ] {
            if lo > hi {
                return Err(Error::InvalidPolicy {
                    detail: format!("{label} range has min {lo} > max {hi}"),
                });
            }
        }
        for name in &self.admet.enabled {
            if !ALL_PROPERTIES.contains(&name.as_str()) {
                return Err(Error::UnknownIndex { name: name.clone() });
            }
        }
        Ok(())
    }

    pub fn relaxed_logp(mut self) -> ScreeningPolicy {
        self.admet.logp_mode = LogPMode::Relaxed;
        self
    }
}
