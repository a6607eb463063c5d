//! Campaign configuration: a TOML file plus command-line overrides. The
//! effective configuration (file with overrides applied) is what gets
//! hashed, so two invocations that resolve to the same settings print the
//! same hash regardless of whether a value came from the file or a flag.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use embedding::EncoderConfig;
use predict::{GbdtParams, MlpParams};
use screen::{
    AdmetRules, BaThresholds, CampaignConfig, LogPMode, NoveltyBand, ScreeningPolicy, P_LOGP,
    P_SAS,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::errors::{io_data, prereq, usage, CliError, Result};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignFile {
    pub config_version: u32,
    pub paths: PathsSection,
    #[serde(default)]
    pub encoder: EncoderSection,
    pub generation: GenerationSection,
    #[serde(default)]
    pub models: ModelsSection,
    #[serde(default)]
    pub policy: PolicySection,
    #[serde(default)]
    pub optimize: OptimizeSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathsSection {
    /// Labels CSV: compound_id,smiles,target,label_type,value_nM.
    pub labels: String,
    /// Library list, one `smiles [id]` per line.
    pub corpus: String,
    /// Directory of per-compound XYZ files named `<id>.xyz`.
    #[serde(default)]
    pub geometries: Option<String>,
    /// JSON map `{smiles: {property: value}}` for `admet_source = "table"`.
    #[serde(default)]
    pub admet_table: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EncoderSection {
    pub dim: usize,
    pub seed: u64,
    pub radius: usize,
    pub buckets: usize,
}

impl Default for EncoderSection {
    fn default() -> Self {
        let base = EncoderConfig::default();
        EncoderSection {
            dim: base.dim,
            seed: base.seed,
            radius: base.radius,
            buckets: base.buckets,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationSection {
    pub seed_smiles: String,
    pub reference_smiles: Vec<String>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub sigma: f64,
    pub times: Vec<f64>,
    pub trajectories: usize,
    pub rng_seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelsSection {
    pub seed: u64,
    pub cv_folds: usize,
    pub gbdt_trees: usize,
    pub gbdt_depth: usize,
    pub gbdt_learning_rate: f64,
    pub gbdt_subsample: f64,
    pub mlp_hidden: Vec<usize>,
    pub mlp_epochs: usize,
    pub mlp_batch_size: usize,
    pub mlp_learning_rate: f64,
    /// Also train geometry-based regressors (requires `paths.geometries`).
    pub tl_fingerprints: bool,
}

impl Default for ModelsSection {
    fn default() -> Self {
        ModelsSection {
            seed: 11,
            cv_folds: 5,
            gbdt_trees: 120,
            gbdt_depth: 3,
            gbdt_learning_rate: 0.08,
            gbdt_subsample: 1.0,
            mlp_hidden: vec![48],
            mlp_epochs: 150,
            mlp_batch_size: 8,
            mlp_learning_rate: 0.01,
            tl_fingerprints: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PolicySection {
    /// "strict" or "relaxed".
    pub logp_mode: String,
    /// Widen the toxicity/absorption caps from 0.3 to 0.7.
    pub include_medium_band: bool,
    /// "surrogate" (local estimates), "table" (paths.admet_table), or
    /// "remote" (GNC_ADMET_ENDPOINT).
    pub admet_source: String,
    pub novelty_min: f64,
    pub novelty_max: f64,
}

impl Default for PolicySection {
    fn default() -> Self {
        PolicySection {
            logp_mode: "strict".to_string(),
            include_medium_band: false,
            admet_source: "surrogate".to_string(),
            novelty_min: 0.0,
            novelty_max: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizeSection {
    /// How many accepted candidates (best consensus MOR affinity first) to
    /// expand into hydroxyl variants.
    pub top_n: usize,
}

impl Default for OptimizeSection {
    fn default() -> Self {
        OptimizeSection { top_n: 3 }
    }
}

/// Flag values that shadow their config-file counterparts.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub rng_seed: Option<u64>,
    pub alpha: Option<f64>,
    pub sigma: Option<f64>,
    pub trajectories: Option<usize>,
    pub logp_mode: Option<String>,
    pub admet_source: Option<String>,
    pub top_n: Option<usize>,
}

#[derive(Debug)]
pub enum AdmetSource {
    Surrogate,
    Table,
    Remote,
}

#[derive(Debug)]
pub struct LoadedConfig {
    pub file: CampaignFile,
    /// SHA-256 over the effective (post-override) configuration.
    pub config_hash: String,
    base_dir: PathBuf,
}

impl LoadedConfig {
    pub fn load(path: &Path, overrides: &Overrides) -> Result<LoadedConfig> {
        let text = std::fs::read_to_string(path).map_err(|_| {
            prereq(format!(
                "config file {} does not exist or is unreadable",
                path.display()
            ))
        })?;
        let mut file: CampaignFile = toml::from_str(&text)
            .map_err(|e| usage(format!("invalid config {}: {e}", path.display())))?;
        if file.config_version != CONFIG_VERSION {
            return Err(usage(format!(
                "config_version {} is not supported (expected {CONFIG_VERSION})",
                file.config_version
            )));
        }

        if let Some(seed) = overrides.rng_seed {
            file.generation.rng_seed = seed;
        }
        if let Some(alpha) = overrides.alpha {
            file.generation.alpha = alpha;
        }
        if let Some(sigma) = overrides.sigma {
            file.generation.sigma = sigma;
        }
        if let Some(n) = overrides.trajectories {
            file.generation.trajectories = n;
        }
        if let Some(mode) = &overrides.logp_mode {
            file.policy.logp_mode = mode.clone();
        }
        if let Some(source) = &overrides.admet_source {
            file.policy.admet_source = source.clone();
        }
        if let Some(n) = overrides.top_n {
            file.optimize.top_n = n;
        }

        let effective = serde_json::to_string(&file)
            .map_err(|e| usage(format!("config not serializable: {e}")))?;
        let config_hash = format!("{:x}", Sha256::digest(effective.as_bytes()));

        let base_dir = path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .unwrap_or(Path::new("."))
            .to_path_buf();

        let loaded = LoadedConfig {
            file,
            config_hash,
            base_dir,
        };
        loaded.validate()?;
        Ok(loaded)
    }

    fn validate(&self) -> Result<()> {
        self.logp_mode()?;
        self.admet_source()?;
        let mut missing = Vec::new();
        for (what, path) in [
            ("labels", Some(self.labels_path())),
            ("corpus", Some(self.corpus_path())),
            ("geometries", self.geometries_dir()),
            ("admet_table", self.admet_table_path()),
        ] {
            if let Some(path) = path {
                if !path.exists() {
                    missing.push(format!("{what} path {}", path.display()));
                }
            }
        }
        if missing.is_empty() {
            Ok(())
        } else {
            Err(prereq(missing.join("; ")))
        }
    }

    fn resolve(&self, rel: &str) -> PathBuf {
        let p = Path::new(rel);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn labels_path(&self) -> PathBuf {
        self.resolve(&self.file.paths.labels)
    }

    pub fn corpus_path(&self) -> PathBuf {
        self.resolve(&self.file.paths.corpus)
    }

    pub fn geometries_dir(&self) -> Option<PathBuf> {
        self.file.paths.geometries.as_deref().map(|p| self.resolve(p))
    }

    pub fn admet_table_path(&self) -> Option<PathBuf> {
        self.file
            .paths
            .admet_table
            .as_deref()
            .map(|p| self.resolve(p))
    }

    pub fn encoder_config(&self) -> EncoderConfig {
        EncoderConfig {
            dim: self.file.encoder.dim,
            seed: self.file.encoder.seed,
            radius: self.file.encoder.radius,
            buckets: self.file.encoder.buckets,
        }
    }

    pub fn gbdt_params(&self) -> GbdtParams {
        let m = &self.file.models;
        GbdtParams {
            trees: m.gbdt_trees,
            depth: m.gbdt_depth,
            learning_rate: m.gbdt_learning_rate,
            subsample: m.gbdt_subsample,
            seed: m.seed,
        }
    }

    pub fn mlp_params(&self) -> MlpParams {
        let m = &self.file.models;
        MlpParams {
            hidden: m.mlp_hidden.clone(),
            epochs: m.mlp_epochs,
            batch_size: m.mlp_batch_size,
            learning_rate: m.mlp_learning_rate,
            seed: m.seed,
        }
    }

    pub fn logp_mode(&self) -> Result<LogPMode> {
        match self.file.policy.logp_mode.as_str() {
            "strict" => Ok(LogPMode::Strict),
            "relaxed" => Ok(LogPMode::Relaxed),
            other => Err(usage(format!(
                "policy.logp_mode must be \"strict\" or \"relaxed\", got \"{other}\""
            ))),
        }
    }

    pub fn admet_source(&self) -> Result<AdmetSource> {
        match self.file.policy.admet_source.as_str() {
            "surrogate" => Ok(AdmetSource::Surrogate),
            "table" => Ok(AdmetSource::Table),
            "remote" => Ok(AdmetSource::Remote),
            other => Err(usage(format!(
                "policy.admet_source must be \"surrogate\", \"table\" or \"remote\", got \"{other}\""
            ))),
        }
    }

    pub fn screening_policy(&self) -> Result<ScreeningPolicy> {
        let mut admet = AdmetRules::default();
        if self.file.policy.include_medium_band {
            admet = admet.include_medium_band();
        }
        admet.logp_mode = self.logp_mode()?;
        if matches!(self.admet_source()?, AdmetSource::Surrogate) {
            // Only the locally computable indexes are checkable offline.
            admet.enabled = [P_LOGP, P_SAS]
                .iter()
                .map(|s| s.to_string())
                .collect::<BTreeSet<_>>();
        }
        let policy = ScreeningPolicy {
            ba: BaThresholds::default(),
            admet,
            novelty: NoveltyBand {
                min: self.file.policy.novelty_min,
                max: self.file.policy.novelty_max,
            },
        };
        policy.validate().map_err(CliError::from)?;
        Ok(policy)
    }

    pub fn campaign_config(&self) -> Result<CampaignConfig> {
        let g = &self.file.generation;
        Ok(CampaignConfig {
            seed_smiles: g.seed_smiles.clone(),
            reference_smiles: g.reference_smiles.clone(),
            weights: g.weights.clone(),
            alpha: g.alpha,
            sigma: g.sigma,
            times: g.times.clone(),
            trajectories: g.trajectories,
            rng_seed: g.rng_seed,
            policy: self.screening_policy()?,
        })
    }

    /// Read a file that lives with the campaign inputs.
    pub fn read_input(&self, path: &Path) -> Result<String> {
        std::fs::read_to_string(path).map_err(|e| io_data(path, e))
    }
}
