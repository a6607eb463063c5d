//! Labeled affinity datasets: CSV ingestion, SMILES canonicalization,
//! derived binding-affinity column, and a content hash for provenance.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::labels::{label_to_ba, LabelType, Target};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRow {
    pub compound_id: String,
    /// Canonical form; raw input SMILES are canonicalized on ingestion.
    pub smiles: String,
    pub target: Target,
    pub label_type: LabelType,
    pub value_nm: f64,
    /// Derived binding affinity, kcal/mol.
    pub ba: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LabeledDataset {
    rows: Vec<DatasetRow>,
}

impl LabeledDataset {
    pub fn new(rows: Vec<DatasetRow>) -> LabeledDataset {
        LabeledDataset { rows }
    }

    pub fn rows(&self) -> &[DatasetRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn labels(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.ba).collect()
    }

    pub fn smiles(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r.smiles.as_str()).collect()
    }

    /// The rows for one assay target, as their own dataset.
    pub fn for_target(&self, target: Target) -> LabeledDataset {
        LabeledDataset {
            rows: self
                .rows
                .iter()
                .filter(|r| r.target == target)
                .cloned()
                .collect(),
        }
    }

    /// Error unless every row shares one target (model splits must be
    /// single-target).
    pub fn require_single_target(&self) -> Result<Target> {
        let first = self.rows.first().ok_or(Error::EmptyDataset)?.target;
        for row in &self.rows {
            if row.target != first {
                return Err(Error::MixedTargets {
                    a: first.to_string(),
                    b: row.target.to_string(),
                });
            }
        }
        Ok(first)
    }

    /// Deterministic content hash over all rows (provenance for model files).
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for row in &self.rows {
            hasher.update(row.compound_id.as_bytes());
            hasher.update([0]);
            hasher.update(row.smiles.as_bytes());
            hasher.update([0]);
            hasher.update(row.target.name().as_bytes());
            hasher.update([0]);
            hasher.update(row.label_type.name().as_bytes());
            hasher.update([0]);
            hasher.update(row.value_nm.to_le_bytes());
        }
        hex(&hasher.finalize())
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// CSV header for raw dataset files.
pub const DATASET_HEADER: [&str; 5] = ["compound_id", "smiles", "target", "label_type", "value_nM"];

/// CSV header for ingested dataset files (raw columns plus the derived
/// binding-affinity column).
pub const INGESTED_HEADER: [&str; 6] = [
    "compound_id",
    "smiles",
    "target",
    "label_type",
    "value_nM",
    "ba",
];

/// A row skipped by the lenient loader, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedRow {
    pub line: usize,
    pub reason: String,
}

/// Read a dataset CSV, canonicalizing SMILES and deriving the BA column.
/// Accepts both the raw 5-column and the ingested 6-column layout (the
/// stored BA is verified against recomputation). Every record must be
/// valid; the first offender is reported with its line number.
pub fn load_csv(path: &Path) -> Result<LabeledDataset> {
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    };
    let text = std::fs::read_to_string(path).map_err(io_err)?;
    parse_csv(&text)
}

/// Lenient variant of [`load_csv`]: a wrong header is still fatal, but bad
/// rows are collected with line numbers instead of aborting the load.
pub fn load_csv_lenient(path: &Path) -> Result<(LabeledDataset, Vec<SkippedRow>)> {
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    };
    let text = std::fs::read_to_string(path).map_err(io_err)?;
    parse_csv_lenient(&text)
}

fn check_header(reader: &mut csv::Reader<&[u8]>) -> Result<bool> {
    let headers = reader.headers().map_err(|e| Error::BadRecord {
        line: 1,
        detail: e.to_string(),
    })?;
    let got: Vec<&str> = headers.iter().collect();
    if got == DATASET_HEADER {
        Ok(false)
    } else if got == INGESTED_HEADER {
        Ok(true)
    } else {
        Err(Error::BadRecord {
            line: 1,
            detail: format!(
                "header must be {:?} or {:?}, got {:?}",
                DATASET_HEADER.join(","),
                INGESTED_HEADER.join(","),
                got.join(",")
            ),
        })
    }
}

fn parse_record(line: usize, record: &csv::StringRecord, has_ba: bool) -> Result<DatasetRow> {
    let expected = if has_ba { 6 } else { 5 };
    if record.len() != expected {
        return Err(Error::BadRecord {
            line,
            detail: format!("expected {expected} fields, got {}", record.len()),
        });
    }
    let compound_id = record[0].to_string();
    let raw_smiles = &record[1];
    let molecule = molgraph::parse_smiles(raw_smiles).map_err(|e| Error::BadRecord {
        line,
        detail: format!("bad SMILES `{raw_smiles}`: {e}"),
    })?;
    let smiles = molgraph::canonical_smiles(&molecule);
    let target = Target::parse(&record[2]).map_err(|e| Error::BadRecord {
        line,
        detail: e.to_string(),
    })?;
    let label_type = LabelType::parse(&record[3]).map_err(|e| Error::BadRecord {
        line,
        detail: e.to_string(),
    })?;
    let value_nm: f64 = record[4].parse().map_err(|_| Error::BadRecord {
        line,
        detail: format!("value_nM `{}` is not a number", &record[4]),
    })?;
    let ba = label_to_ba(label_type, value_nm).map_err(|e| Error::BadRecord {
        line,
        detail: e.to_string(),
    })?;
    if has_ba {
        let stored: f64 = record[5].parse().map_err(|_| Error::BadRecord {
            line,
            detail: format!("ba `{}` is not a number", &record[5]),
        })?;
        if (stored - ba).abs() > 1e-9 {
            return Err(Error::BadRecord {
                line,
                detail: format!("stored ba {stored} disagrees with recomputed {ba}"),
            });
        }
    }
    Ok(DatasetRow {
        compound_id,
        smiles,
        target,
        label_type,
        value_nm,
        ba,
    })
}

/// Parse dataset CSV text (same rules as [`load_csv`]).
pub fn parse_csv(text: &str) -> Result<LabeledDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let has_ba = check_header(&mut reader)?;
    let mut rows = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let line = idx + 2; // header is line 1
        let record = record.map_err(|e| Error::BadRecord {
            line,
            detail: e.to_string(),
        })?;
        rows.push(parse_record(line, &record, has_ba)?);
    }
    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(LabeledDataset { rows })
}

/// Parse dataset CSV text, collecting bad rows instead of failing on the
/// first (same rules as [`load_csv_lenient`]). An all-bad file yields an
/// empty dataset, not an error; callers decide whether that is fatal.
pub fn parse_csv_lenient(text: &str) -> Result<(LabeledDataset, Vec<SkippedRow>)> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let has_ba = check_header(&mut reader)?;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let line = idx + 2;
        let parsed = record
            .map_err(|e| Error::BadRecord {
                line,
                detail: e.to_string(),
            })
            .and_then(|record| parse_record(line, &record, has_ba));
        match parsed {
            Ok(row) => rows.push(row),
            Err(e) => skipped.push(SkippedRow {
                line,
                reason: e.to_string(),
            }),
        }
    }
    Ok((LabeledDataset { rows }, skipped))
}

/// Write a dataset in the ingested 6-column layout (BA column included).
pub fn save_csv(dataset: &LabeledDataset, path: &Path) -> Result<()> {
    let io_err = |detail: String| Error::Io {
        path: path.display().to_string(),
        detail,
    };
    let mut writer = csv::Writer::from_path(path).map_err(|e| io_err(e.to_string()))?;
    writer
        .write_record(INGESTED_HEADER)
        .map_err(|e| io_err(e.to_string()))?;
    for row in dataset.rows() {
        writer
            .write_record([
                row.compound_id.as_str(),
                row.smiles.as_str(),
                row.target.name(),
                row.label_type.name(),
                &format!("{}", row.value_nm),
                &format!("{}", row.ba),
            ])
            .map_err(|e| io_err(e.to_string()))?;
    }
    writer.flush().map_err(|e| io_err(e.to_string()))?;
    Ok(())
}
