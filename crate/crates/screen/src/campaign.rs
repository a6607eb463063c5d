//! Campaign driver: encode references and seed, run the latent generator,
//! gate candidates stage by stage, and persist auditable records.
//!
//! Stage failures are recorded on the candidate and never abort the run.
//! Records are JSON-lines with a versioned schema; every verdict stored in
//! a record can be recomputed bit-exactly from the stored values and the
//! policy (see [`audit_records`]).

use std::collections::BTreeMap;
use std::path::Path;

use embedding::{LatentVector, LibraryIndex};
use generator::{generate, DriftSpec, GeneratedSample, GenerationSchedule, Integrator};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gates::{admet_gate, ba_gate, novelty_gate, BaMap, GateVerdict, PropertyMap};
use crate::novelty::{novelty_scores, NoveltyScores};
use crate::policy::ScreeningPolicy;

pub const RECORD_VERSION: u32 = 1;

/// Everything needed to regenerate the candidate deterministically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub rng_seed: u64,
    pub seed_smiles: String,
    pub reference_smiles: Vec<String>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub sigma: f64,
    pub time: f64,
    pub trajectory: usize,
}

/// Farthest pipeline point a candidate reached. Ordered: a later stage
/// implies every earlier stage was passed.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum Stage {
    Generated,
    PassedFirstGate,
    Decoded,
    Reconstructed,
    PassedNoveltyGate,
    PassedConsensusGate,
    Accepted,
}

impl Stage {
    pub const ALL: [Stage; 7] = [
        Stage::Generated,
        Stage::PassedFirstGate,
        Stage::Decoded,
        Stage::Reconstructed,
        Stage::PassedNoveltyGate,
        Stage::PassedConsensusGate,
        Stage::Accepted,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Stage::Generated => "generated",
            Stage::PassedFirstGate => "passed_first_gate",
            Stage::Decoded => "decoded",
            Stage::Reconstructed => "reconstructed",
            Stage::PassedNoveltyGate => "passed_novelty_gate",
            Stage::PassedConsensusGate => "passed_consensus_gate",
            Stage::Accepted => "accepted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub record_version: u32,
    pub candidate_id: String,
    pub provenance: Provenance,
    pub latent_hash: String,
    pub first_layer_ba: Option<BaMap>,
    pub first_gate: Option<GateVerdict>,
    pub decoded_smiles: Option<String>,
    pub decode_similarity: Option<f64>,
    pub reconstruction_ok: Option<bool>,
    pub novelty: Option<NoveltyScores>,
    pub novelty_verdict: Option<GateVerdict>,
    pub consensus_ba: Option<BaMap>,
    pub consensus_verdict: Option<GateVerdict>,
    pub admet: Option<PropertyMap>,
    pub admet_verdict: Option<GateVerdict>,
    pub stage: Stage,
    /// Populated when a stage errored (not merely gated out).
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub seed_smiles: String,
    pub reference_smiles: Vec<String>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub sigma: f64,
    pub times: Vec<f64>,
    pub trajectories: usize,
    pub rng_seed: u64,
    pub policy: ScreeningPolicy,
}

/// Model callbacks the driver is parameterized over: affinity from a raw
/// latent (first layer), affinity for a decoded structure (consensus), and
/// a property source (may cache, hence `FnMut`).
pub struct CampaignScorers<'a> {
    pub first_layer: &'a dyn Fn(&LatentVector) -> Result<BaMap>,
    pub consensus: &'a dyn Fn(&str) -> Result<BaMap>,
    pub properties: &'a mut dyn FnMut(&str) -> Result<PropertyMap>,
}

/// One histogram as a numeric table (plotting is downstream).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramTable {
    pub label: String,
    pub lo: f64,
    pub bin_width: f64,
    pub counts: Vec<u64>,
}

/// Bin values into a fixed-width table over their observed range.
pub fn histogram(label: impl Into<String>, values: &[f64], bins: usize) -> HistogramTable {
    let label = label.into();
    if values.is_empty() || bins == 0 {
        return HistogramTable {
            label,
            lo: 0.0,
            bin_width: 0.0,
            counts: Vec::new(),
        };
    }
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return HistogramTable {
            label,
            lo,
            bin_width: 0.0,
            counts: vec![values.len() as u64],
        };
    }
    let bin_width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    for &v in values {
        let idx = (((v - lo) / bin_width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    HistogramTable {
        label,
        lo,
        bin_width,
        counts,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageCount {
    pub stage: String,
    pub reached: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    /// Candidates that reached at least each stage, pipeline order.
    pub stage_counts: Vec<StageCount>,
    /// Reconstruction successes over decoded candidates (0 if none decoded).
    pub reconstruction_rate: f64,
    pub ba_histograms: Vec<HistogramTable>,
    pub similarity_histograms: Vec<HistogramTable>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignOutcome {
    pub records: Vec<CandidateRecord>,
    pub summary: CampaignSummary,
}

fn latent_hash(v: &LatentVector) -> String {
    let mut hasher = Sha256::new();
    for value in v.values() {
        hasher.update(value.to_le_bytes());
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Build the drift specification a campaign config describes (references
/// encoded through the index).
pub fn campaign_drift_spec(config: &CampaignConfig, index: &LibraryIndex) -> Result<DriftSpec> {
    let mut reference_latents = Vec::with_capacity(config.reference_smiles.len());
    for smiles in &config.reference_smiles {
        let molecule = molgraph::parse_smiles(smiles)?;
        reference_latents.push(index.encode(&molecule));
    }
    Ok(DriftSpec::new(reference_latents, config.weights.clone())?
        .with_alpha(config.alpha)?
        .with_sigma(config.sigma)?)
}

/// Generate the latent batch a campaign config describes.
pub fn campaign_samples(
    config: &CampaignConfig,
    index: &LibraryIndex,
) -> Result<Vec<GeneratedSample>> {
    let seed_molecule = molgraph::parse_smiles(&config.seed_smiles)?;
    let seed_latent = index.encode(&seed_molecule);
    let spec = campaign_drift_spec(config, index)?;
    let schedule = GenerationSchedule {
        times: config.times.clone(),
        trajectories: config.trajectories,
        rng_seed: config.rng_seed,
        integrator: Integrator::Exact,
    };
    Ok(generate(&seed_latent, &spec, &schedule)?)
}

/// Run the full pipeline. Sequential by design: record files must be
/// byte-identical across same-seed runs.
pub fn run_campaign(
    config: &CampaignConfig,
    index: &LibraryIndex,
    scorers: &mut CampaignScorers<'_>,
) -> Result<CampaignOutcome> {
    if index.is_empty() {
        return Err(Error::EmptyIndex);
    }
    let samples = campaign_samples(config, index)?;
    run_campaign_with_samples(config, index, &samples, scorers)
}

/// Screen an already-generated latent batch (the resumable half of
/// [`run_campaign`]).
pub fn run_campaign_with_samples(
    config: &CampaignConfig,
    index: &LibraryIndex,
    samples: &[GeneratedSample],
    scorers: &mut CampaignScorers<'_>,
) -> Result<CampaignOutcome> {
    config.policy.validate()?;
    if index.is_empty() {
        return Err(Error::EmptyIndex);
    }
    let seed_molecule = molgraph::parse_smiles(&config.seed_smiles)?;
    let seed_canonical = molgraph::canonical_smiles(&seed_molecule);

    let mut reference_canonical = Vec::with_capacity(config.reference_smiles.len());
    let mut reference_latents = Vec::with_capacity(config.reference_smiles.len());
    for smiles in &config.reference_smiles {
        let molecule = molgraph::parse_smiles(smiles)?;
        reference_canonical.push(molgraph::canonical_smiles(&molecule));
        reference_latents.push(index.encode(&molecule));
    }

    let mut records = Vec::with_capacity(samples.len());
    for (i, sample) in samples.iter().enumerate() {
        records.push(process_candidate(
            i,
            sample,
            config,
            &seed_canonical,
            &reference_canonical,
            &reference_latents,
            index,
            scorers,
        ));
    }
    let summary = summarize(&records);
    Ok(CampaignOutcome { records, summary })
}

#[allow(clippy::too_many_arguments)]
fn process_candidate(
    ordinal: usize,
    sample: &GeneratedSample,
    config: &CampaignConfig,
    seed_canonical: &str,
    reference_canonical: &[String],
    reference_latents: &[LatentVector],
    index: &LibraryIndex,
    scorers: &mut CampaignScorers<'_>,
) -> CandidateRecord {
    let policy = &config.policy;
    let mut record = CandidateRecord {
        record_version: RECORD_VERSION,
        candidate_id: format!("c{ordinal:06}"),
        provenance: Provenance {
            rng_seed: config.rng_seed,
            seed_smiles: seed_canonical.to_string(),
            reference_smiles: reference_canonical.to_vec(),
            weights: config.weights.clone(),
            alpha: config.alpha,
            sigma: config.sigma,
            time: sample.time,
            trajectory: sample.trajectory,
        },
        latent_hash: latent_hash(&sample.vector),
        first_layer_ba: None,
        first_gate: None,
        decoded_smiles: None,
        decode_similarity: None,
        reconstruction_ok: None,
        novelty: None,
        novelty_verdict: None,
        consensus_ba: None,
        consensus_verdict: None,
        admet: None,
        admet_verdict: None,
        stage: Stage::Generated,
        failure: None,
    };

    macro_rules! attempt {
        ($expr:expr) => {
            match $expr {
                Ok(value) => value,
                Err(e) => {
                    record.failure = Some(e.to_string());
                    return record;
                }
            }
        };
    }

    // First-layer affinity gate on the raw latent.
    let first_ba = attempt!((scorers.first_layer)(&sample.vector));
    let first_verdict = attempt!(ba_gate(&first_ba, policy));
    record.first_layer_ba = Some(first_ba);
    let pass = first_verdict.pass;
    record.first_gate = Some(first_verdict);
    if !pass {
        return record;
    }
    record.stage = Stage::PassedFirstGate;

    // Decode to the nearest library structure.
    let decoded = attempt!(index.decode_smiles(&sample.vector, 1));
    let (smiles, similarity) = decoded
        .into_iter()
        .next()
        .expect("decode on a non-empty index yields at least one hit");
    record.decoded_smiles = Some(smiles.clone());
    record.decode_similarity = Some(similarity);
    record.stage = Stage::Decoded;

    // Round-trip fidelity of the decoded structure.
    let molecule = attempt!(molgraph::parse_smiles(&smiles).map_err(Error::from));
    let ok = attempt!(index.reconstruction_check(&molecule).map_err(Error::from));
    record.reconstruction_ok = Some(ok);
    if !ok {
        return record;
    }
    record.stage = Stage::Reconstructed;

    // Similarity profile and novelty band.
    let scores = attempt!(novelty_scores(
        &sample.vector,
        reference_latents,
        index
    ));
    let verdict = novelty_gate(scores.max_to_training, policy);
    record.novelty = Some(scores);
    let pass = verdict.pass;
    record.novelty_verdict = Some(verdict);
    if !pass {
        return record;
    }
    record.stage = Stage::PassedNoveltyGate;

    // Consensus re-evaluation on the decoded structure.
    let consensus_ba = attempt!((scorers.consensus)(&smiles));
    let verdict = attempt!(ba_gate(&consensus_ba, policy));
    record.consensus_ba = Some(consensus_ba);
    let pass = verdict.pass;
    record.consensus_verdict = Some(verdict);
    if !pass {
        return record;
    }
    record.stage = Stage::PassedConsensusGate;

    // Property gate.
    let properties = attempt!((scorers.properties)(&smiles));
    let verdict = attempt!(admet_gate(&properties, policy));
    record.admet = Some(properties);
    let pass = verdict.pass;
    record.admet_verdict = Some(verdict);
    if pass {
        record.stage = Stage::Accepted;
    }
    record
}

/// Per-stage reach counts, reconstruction rate, and distribution tables.
pub fn summarize(records: &[CandidateRecord]) -> CampaignSummary {
    let stage_counts = Stage::ALL
        .iter()
        .map(|stage| StageCount {
            stage: stage.name().to_string(),
            reached: records.iter().filter(|r| r.stage >= *stage).count(),
        })
        .collect();

    let decoded = records.iter().filter(|r| r.decoded_smiles.is_some()).count();
    let reconstructed = records
        .iter()
        .filter(|r| r.reconstruction_ok == Some(true))
        .count();
    let reconstruction_rate = if decoded == 0 {
        0.0
    } else {
        reconstructed as f64 / decoded as f64
    };

    let mut target_values: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for record in records {
        if let Some(ba) = &record.first_layer_ba {
            for (target, value) in ba {
                target_values.entry(target.clone()).or_default().push(*value);
            }
        }
    }
    let ba_histograms = target_values
        .iter()
        .map(|(target, values)| histogram(format!("BA {target}"), values, 20))
        .collect();

    let mut similarity_histograms = Vec::new();
    let reference_count = records
        .iter()
        .filter_map(|r| r.novelty.as_ref())
        .map(|n| n.per_reference.len())
        .max()
        .unwrap_or(0);
    for ref_idx in 0..reference_count {
        let values: Vec<f64> = records
            .iter()
            .filter_map(|r| r.novelty.as_ref())
            .filter_map(|n| n.per_reference.get(ref_idx).copied())
            .collect();
        similarity_histograms.push(histogram(
            format!("similarity reference_{ref_idx}"),
            &values,
            20,
        ));
    }
    let training: Vec<f64> = records
        .iter()
        .filter_map(|r| r.novelty.as_ref())
        .map(|n| n.max_to_training)
        .collect();
    similarity_histograms.push(histogram("similarity training_max", &training, 20));

    CampaignSummary {
        stage_counts,
        reconstruction_rate,
        ba_histograms,
        similarity_histograms,
    }
}

/// Write records as JSON-lines (one record per line, append-order = run
/// order). Output is byte-deterministic for identical record sets.
pub fn save_records(records: &[CandidateRecord], path: &Path) -> Result<()> {
    let mut text = String::new();
    for record in records {
        let line = serde_json::to_string(record).map_err(|e| Error::BadRecord {
            detail: e.to_string(),
        })?;
        text.push_str(&line);
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })
}

pub fn load_records(path: &Path) -> Result<Vec<CandidateRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| Error::BadRecord {
                detail: format!("line {}: {e}", i + 1),
            })
        })
        .collect()
}

pub fn save_summary(summary: &CampaignSummary, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(summary).map_err(|e| Error::BadRecord {
        detail: e.to_string(),
    })?;
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })
}

/// Recompute every stored verdict from the stored values and the policy;
/// any bit of disagreement is an error naming the candidate.
pub fn audit_records(records: &[CandidateRecord], policy: &ScreeningPolicy) -> Result<()> {
    let mismatch = |candidate: &str, detail: &str| Error::AuditMismatch {
        candidate: candidate.to_string(),
        detail: detail.to_string(),
    };
    for record in records {
        let id = &record.candidate_id;
        if let (Some(ba), Some(stored)) = (&record.first_layer_ba, &record.first_gate) {
            if &ba_gate(ba, policy)? != stored {
                return Err(mismatch(id, "first-layer affinity verdict"));
            }
        }
        if let (Some(ba), Some(stored)) = (&record.consensus_ba, &record.consensus_verdict) {
            if &ba_gate(ba, policy)? != stored {
                return Err(mismatch(id, "consensus affinity verdict"));
            }
        }
        if let (Some(scores), Some(stored)) = (&record.novelty, &record.novelty_verdict) {
            if &novelty_gate(scores.max_to_training, policy) != stored {
                return Err(mismatch(id, "novelty verdict"));
            }
        }
        if let (Some(properties), Some(stored)) = (&record.admet, &record.admet_verdict) {
            if &admet_gate(properties, policy)? != stored {
                return Err(mismatch(id, "property verdict"));
            }
        }
    }
    Ok(())
}
