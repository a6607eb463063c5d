//! Candidate screening: threshold policies, affinity and property gates,
//! novelty scoring against a training index, a remote property client with
//! caching and local surrogates, the end-to-end campaign driver with
//! auditable JSON-lines records, and a hydroxyl-substitution optimizer.

pub mod admet;
pub mod campaign;
pub mod error;
pub mod gates;
pub mod novelty;
pub mod optimize;
pub mod policy;

pub use admet::{local_surrogates, AdmetBatch, AdmetClient, AdmetTransport, HttpTransport};
pub use campaign::{
    audit_records, campaign_drift_spec, campaign_samples, histogram, load_records,
    run_campaign, run_campaign_with_samples, save_records, save_summary, summarize,
    CampaignConfig, CampaignOutcome, CampaignScorers, CampaignSummary, CandidateRecord,
    HistogramTable, Provenance, Stage, StageCount, RECORD_VERSION,
};
pub use error::{Error, Result};
pub use gates::{admet_gate, ba_gate, novelty_gate, BaMap, GateVerdict, PropertyMap};
pub use novelty::{novelty_scores, NoveltyScores};
pub use optimize::{logp_optimize, VariantOutcome};
pub use policy::{
    AdmetRules, BaThresholds, LogPMode, NoveltyBand, ScreeningPolicy, ALL_PROPERTIES,
    P_CACO2, P_F20, P_FDAMDD, P_LOGP, P_LOGS, P_SAS, P_T_HALF, TARGET_NAMES,
};
