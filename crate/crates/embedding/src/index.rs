//! Library-backed decoder: a persisted list of (canonical SMILES, latent
//! vector) pairs with exact nearest-neighbour queries under the continuous
//! Tanimoto similarity.

use std::collections::HashMap;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use molgraph::{canonical_smiles, parse_smiles, Molecule};

use crate::encoder::{Encoder, EncoderConfig, ENCODER_VERSION};
use crate::error::{Error, Result};
use crate::latent::{tanimoto_latent, LatentVector};

const MAGIC: &[u8; 8] = b"GNCINDEX";
const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct IndexEntry {
    pub smiles: String,
    pub vector: LatentVector,
    pub metadata: Option<String>,
}

/// A SMILES input the index builder could not use, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct RejectedEntry {
    pub input: String,
    pub error: molgraph::Error,
}

#[derive(Debug)]
pub struct LibraryIndex {
    encoder: Encoder,
    entries: Vec<IndexEntry>,
    by_smiles: HashMap<String, usize>,
}

impl LibraryIndex {
    /// Build an index over `inputs`. Entries that fail to parse are
    /// collected and skipped, not fatal; duplicates (by canonical form)
    /// collapse to the first occurrence.
    pub fn build<I, S>(config: EncoderConfig, inputs: I) -> (Self, Vec<RejectedEntry>)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut index = Self {
            encoder: Encoder::new(config),
            entries: Vec::new(),
            by_smiles: HashMap::new(),
        };
        let rejected = index.ingest(inputs);
        (index, rejected)
    }

    fn ingest<I, S>(&mut self, inputs: I) -> Vec<RejectedEntry>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut rejected = Vec::new();
        for input in inputs {
            let input = input.as_ref();
            match parse_smiles(input) {
                Ok(m) => {
                    let canonical = canonical_smiles(&m);
                    if self.by_smiles.contains_key(&canonical) {
                        continue;
                    }
                    let vector = self.encoder.encode(&m);
                    self.by_smiles.insert(canonical.clone(), self.entries.len());
                    self.entries.push(IndexEntry {
                        smiles: canonical,
                        vector,
                        metadata: None,
                    });
                }
                Err(error) => rejected.push(RejectedEntry {
                    input: input.to_string(),
                    error,
                }),
            }
        }
        rejected
    }

    /// A new index holding this one's entries plus `additions` (same
    /// encoder config; duplicates collapse).
    pub fn extended<I, S>(&self, additions: I) -> (Self, Vec<RejectedEntry>)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut index = Self {
            encoder: Encoder::new(self.encoder.config().clone()),
            entries: self.entries.clone(),
            by_smiles: self.by_smiles.clone(),
        };
        let rejected = index.ingest(additions);
        (index, rejected)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[IndexEntry] {
        &self.entries
    }

    pub fn config(&self) -> &EncoderConfig {
        self.encoder.config()
    }

    pub fn contains(&self, canonical: &str) -> bool {
        self.by_smiles.contains_key(canonical)
    }

    /// Encode with this index's own encoder (and column cache).
    pub fn encode(&self, m: &Molecule) -> LatentVector {
        self.encoder.encode(m)
    }

    /// Top-`k` entries by similarity to `v`, descending; ties broken by
    /// canonical SMILES so results are fully deterministic.
    pub fn decode_smiles(&self, v: &LatentVector, k: usize) -> Result<Vec<(String, f64)>> {
        if self.entries.is_empty() {
            return Err(Error::EmptyIndex);
        }
        let mut scored: Vec<(usize, f64)> = Vec::with_capacity(self.entries.len());
        for (i, e) in self.entries.iter().enumerate() {
            scored.push((i, tanimoto_latent(v, &e.vector)?));
        }
        scored.sort_by(|(ia, sa), (ib, sb)| {
            sb.total_cmp(sa)
                .then_with(|| self.entries[*ia].smiles.cmp(&self.entries[*ib].smiles))
        });
        Ok(scored
            .into_iter()
            .take(k)
            .map(|(i, s)| (self.entries[i].smiles.clone(), s))
            .collect())
    }

    /// Like [`decode_smiles`](Self::decode_smiles) but returns parsed
    /// molecules.
    pub fn decode(&self, v: &LatentVector, k: usize) -> Result<Vec<(Molecule, f64)>> {
        Ok(self
            .decode_smiles(v, k)?
            .into_iter()
            .map(|(s, score)| {
                let m = parse_smiles(&s).expect("index entries are valid canonical strings");
                (m, score)
            })
            .collect())
    }

    pub fn nearest(&self, v: &LatentVector) -> Result<(String, f64)> {
        Ok(self.decode_smiles(v, 1)?.remove(0))
    }

    /// True iff encoding `m` and decoding the result lands back on `m`.
    pub fn reconstruction_check(&self, m: &Molecule) -> Result<bool> {
        let (top, _) = self.nearest(&self.encode(m))?;
        Ok(top == canonical_smiles(m))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let io_err = |e: std::io::Error| Error::Io {
            path: path.display().to_string(),
            detail: e.to_string(),
        };
        let mut w = BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
        let cfg = self.encoder.config();
        let mut write = |bytes: &[u8]| w.write_all(bytes).map_err(io_err);
        write(MAGIC)?;
        write(&FORMAT_VERSION.to_le_bytes())?;
        write(&ENCODER_VERSION.to_le_bytes())?;
        write(&(cfg.dim as u64).to_le_bytes())?;
        write(&cfg.seed.to_le_bytes())?;
        write(&[cfg.radius])?;
        write(&cfg.buckets.to_le_bytes())?;
        write(cfg.config_hash().as_bytes())?; // 64 hex chars
        write(&(self.entries.len() as u64).to_le_bytes())?;
        for e in &self.entries {
            write(&(e.smiles.len() as u32).to_le_bytes())?;
            write(e.smiles.as_bytes())?;
            match &e.metadata {
                None => write(&[0u8])?,
                Some(meta) => {
                    write(&[1u8])?;
                    write(&(meta.len() as u32).to_le_bytes())?;
                    write(meta.as_bytes())?;
                }
            }
            for v in e.vector.values() {
                write(&v.to_le_bytes())?;
            }
        }
        w.flush().map_err(io_err)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let io_err = |e: std::io::Error| Error::Io {
            path: path.display().to_string(),
            detail: e.to_string(),
        };
        let mut r = BufReader::new(std::fs::File::open(path).map_err(io_err)?);
        let bad = |detail: &str| Error::BadIndexFile {
            detail: detail.to_string(),
        };

        let mut magic = [0u8; 8];
        r.read_exact(&mut magic).map_err(io_err)?;
        if &magic != MAGIC {
            return Err(bad("magic bytes do not match"));
        }
        let format = read_u32(&mut r).map_err(io_err)?;
        if format != FORMAT_VERSION {
            return Err(Error::IncompatibleIndex {
                detail: format!("file format v{format}, this build reads v{FORMAT_VERSION}"),
            });
        }
        let encoder_version = read_u32(&mut r).map_err(io_err)?;
        if encoder_version != ENCODER_VERSION {
            return Err(Error::IncompatibleIndex {
                detail: format!(
                    "vectors written by encoder v{encoder_version}, this build is v{ENCODER_VERSION}"
                ),
            });
        }
        let dim = read_u64(&mut r).map_err(io_err)? as usize;
        let seed = read_u64(&mut r).map_err(io_err)?;
        let mut radius = [0u8; 1];
        r.read_exact(&mut radius).map_err(io_err)?;
        let buckets = read_u64(&mut r).map_err(io_err)?;
        let config = EncoderConfig {
            dim,
            seed,
            radius: radius[0],
            buckets,
        };
        let mut stored_hash = [0u8; 64];
        r.read_exact(&mut stored_hash).map_err(io_err)?;
        if config.config_hash().as_bytes() != stored_hash {
            return Err(Error::IncompatibleIndex {
                detail: "encoder config hash does not match header fields".into(),
            });
        }

        let count = read_u64(&mut r).map_err(io_err)? as usize;
        let mut entries = Vec::with_capacity(count);
        let mut by_smiles = HashMap::with_capacity(count);
        for i in 0..count {
            let smiles = read_string(&mut r).map_err(io_err)?;
            let mut flag = [0u8; 1];
            r.read_exact(&mut flag).map_err(io_err)?;
            let metadata = match flag[0] {
                0 => None,
                1 => Some(read_string(&mut r).map_err(io_err)?),
                other => return Err(bad(&format!("bad metadata flag {other}"))),
            };
            let mut values = Vec::with_capacity(dim);
            let mut buf = [0u8; 8];
            for _ in 0..dim {
                r.read_exact(&mut buf).map_err(io_err)?;
                values.push(f64::from_le_bytes(buf));
            }
            let vector = LatentVector::new(values)
                .map_err(|e| bad(&format!("entry {i} has a non-finite value: {e}")))?;
            if by_smiles.insert(smiles.clone(), i).is_some() {
                return Err(bad(&format!("duplicate entry `{smiles}`")));
            }
            entries.push(IndexEntry {
                smiles,
                vector,
                metadata,
            });
        }
        Ok(Self {
            encoder: Encoder::new(config),
            entries,
            by_smiles,
        })
    }
}

fn read_u32(r: &mut impl Read) -> std::io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> std::io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_string(r: &mut impl Read) -> std::io::Result<String> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    let len = u32::from_le_bytes(b) as usize;
    let mut bytes = vec![0u8; len];
    r.read_exact(&mut bytes)?;
    String::from_utf8(bytes)
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string()))
}
