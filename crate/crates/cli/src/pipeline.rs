//! Shared plumbing between subcommands: corpus and geometry loading,
//! feature construction, model file layout, and artifact helpers.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use embedding::{EncoderConfig, LibraryIndex};
use molgraph::Molecule;
use predict::{FeatureMatrix, ModelFile, Target};
use screen::PropertyMap;
use serde::Serialize;
use sha2::{Digest, Sha256};
use toplap::FingerprintConfig;

use crate::errors::{data, io_data, prereq, Result};

pub const TARGETS: [Target; 4] = [Target::MOR, Target::KOR, Target::DOR, Target::HERG];

/// One library entry: canonical structure plus its corpus identifier.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub smiles: String,
    pub id: String,
}

#[derive(Debug)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

/// Parse a `smiles [id]` line-per-molecule library list. Lines starting
/// with `#` and blank lines are skipped. Unparseable structures are a hard
/// error: the corpus defines the decode vocabulary and must be clean.
pub fn load_corpus(path: &Path) -> Result<Corpus> {
    let text = std::fs::read_to_string(path).map_err(|e| io_data(path, e))?;
    let mut entries: Vec<CorpusEntry> = Vec::new();
    let mut seen_ids = std::collections::HashSet::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let raw = parts.next().expect("non-empty line has a first token");
        let id = parts
            .next()
            .map(|s| s.to_string())
            .unwrap_or_else(|| format!("entry{}", lineno + 1));
        let molecule = molgraph::parse_smiles(raw).map_err(|e| {
            data(format!(
                "{} line {}: bad structure `{raw}`: {e}",
                path.display(),
                lineno + 1
            ))
        })?;
        let smiles = molgraph::canonical_smiles(&molecule);
        if !seen_ids.insert(id.clone()) {
            return Err(data(format!(
                "{} line {}: duplicate corpus id `{id}`",
                path.display(),
                lineno + 1
            )));
        }
        if entries.iter().any(|e| e.smiles == smiles) {
            continue; // same structure under two spellings: first one wins
        }
        entries.push(CorpusEntry { smiles, id });
    }
    if entries.is_empty() {
        return Err(data(format!("{}: corpus has no entries", path.display())));
    }
    Ok(Corpus { entries })
}

/// Embed the whole corpus. Rejections are a hard error here because the
/// corpus was already validated structure-by-structure in `load_corpus`.
pub fn build_index(config: EncoderConfig, corpus: &Corpus) -> Result<LibraryIndex> {
    let (index, rejected) = LibraryIndex::build(config, corpus.entries.iter().map(|e| &e.smiles));
    if let Some(first) = rejected.first() {
        return Err(data(format!(
            "library index rejected `{}`: {} ({} rejected in total)",
            first.input,
            first.error,
            rejected.len()
        )));
    }
    Ok(index)
}

/// Feature tag for latent-vector regressors; ties a model file to the
/// encoder settings that produced its inputs.
pub fn latent_tag(config: &EncoderConfig) -> String {
    format!("latent-{}", config.config_hash())
}

pub fn encode_molecule(config: &EncoderConfig, m: &Molecule) -> Vec<f64> {
    embedding::encode(config, m).values().to_vec()
}

pub fn latent_rows(config: &EncoderConfig, smiles: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::with_capacity(smiles.len());
    for s in smiles {
        let molecule = molgraph::parse_smiles(s)?;
        rows.push(encode_molecule(config, &molecule));
    }
    Ok(rows)
}

pub fn single_row(tag: &str, row: Vec<f64>) -> FeatureMatrix {
    FeatureMatrix::new(tag, vec![row])
}

/// Map canonical SMILES -> geometry file, for corpus ids that have one.
pub fn geometry_manifest(corpus: &Corpus, dir: &Path) -> BTreeMap<String, PathBuf> {
    let mut manifest = BTreeMap::new();
    for entry in &corpus.entries {
        let path = dir.join(format!("{}.xyz", entry.id));
        if path.exists() {
            manifest.insert(entry.smiles.clone(), path);
        }
    }
    manifest
}

/// Topological fingerprint rows for the dataset rows that have geometries.
/// Returns (rows, labels, skipped-count).
pub fn tl_rows(
    manifest: &BTreeMap<String, PathBuf>,
    fp_config: &FingerprintConfig,
    smiles: &[&str],
    labels: &[f64],
) -> Result<(Vec<Vec<f64>>, Vec<f64>, usize)> {
    let mut rows = Vec::new();
    let mut kept = Vec::new();
    let mut skipped = 0usize;
    for (s, y) in smiles.iter().zip(labels) {
        match manifest.get(*s) {
            Some(path) => {
                let cloud = molgraph::load_structure(path)?;
                let fp = toplap::tl_fingerprint(&cloud, fp_config)?;
                rows.push(fp.values.clone());
                kept.push(*y);
            }
            None => skipped += 1,
        }
    }
    Ok((rows, kept, skipped))
}

pub fn models_dir(out: &Path) -> PathBuf {
    out.join("models")
}

pub fn model_path(out: &Path, target: Target, kind: &str) -> PathBuf {
    models_dir(out).join(format!("{}_{kind}.json", target.name()))
}

/// Load a model file, naming it and the producing command when absent.
pub fn load_model_or_prereq(out: &Path, target: Target, kind: &str) -> Result<ModelFile> {
    let path = model_path(out, target, kind);
    if !path.exists() {
        return Err(prereq(format!(
            "model file {} (run `gnc train` first)",
            path.display()
        )));
    }
    Ok(predict::load_model(&path)?)
}

pub fn dataset_path(out: &Path, target: Target) -> PathBuf {
    out.join("datasets").join(format!("{}.csv", target.name()))
}

pub fn latents_path(out: &Path) -> PathBuf {
    out.join("latents.bin")
}

pub fn records_path(out: &Path) -> PathBuf {
    out.join("records.jsonl")
}

pub fn variants_path(out: &Path) -> PathBuf {
    out.join("variants.jsonl")
}

/// Pretty-printed JSON artifact with trailing newline.
pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| data(format!("serializing {}: {e}", path.display())))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| io_data(path, e))
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| io_data(path, e))?;
    Ok(format!("{:x}", Sha256::digest(&bytes)))
}

/// `{smiles: {property: value}}` lookup table for offline full-ADMET runs.
pub fn load_property_table(path: &Path) -> Result<BTreeMap<String, PropertyMap>> {
    let text = std::fs::read_to_string(path).map_err(|e| io_data(path, e))?;
    let raw: BTreeMap<String, PropertyMap> = serde_json::from_str(&text)
        .map_err(|e| data(format!("{}: bad property table: {e}", path.display())))?;
    let mut table = BTreeMap::new();
    for (smiles, props) in raw {
        let molecule = molgraph::parse_smiles(&smiles)
            .map_err(|e| data(format!("{}: bad key `{smiles}`: {e}", path.display())))?;
        table.insert(molgraph::canonical_smiles(&molecule), props);
    }
    Ok(table)
}
