//! Deterministic reference encoder.
//!
//! This is not a learned model: it fills the encoder slot of the pipeline
//! with something reproducible. A molecule becomes a sparse feature map
//! (global count descriptors plus hashed circular-substructure counts up to
//! a fixed radius); each feature id owns a fixed pseudorandom Gaussian
//! column, the sparse map is projected through those columns into `dim`
//! components, and the result is rescaled to unit RMS. Identical graphs give
//! bitwise identical vectors for a given config.

use std::collections::HashMap;
use std::sync::Mutex;

use molgraph::rings::ring_info;
use molgraph::{BondOrder, Element, Molecule};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use sha2::{Digest, Sha256};

use crate::latent::LatentVector;

/// Bumped whenever the feature extraction or projection changes meaning;
/// part of the config hash, so stale persisted indexes refuse to load.
pub const ENCODER_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct EncoderConfig {
    /// Latent dimension.
    pub dim: usize,
    /// Seed for the projection columns.
    pub seed: u64,
    /// Circular-substructure radius (0..=radius shells per atom).
    pub radius: u8,
    /// Hash-bucket count for substructure features.
    pub buckets: u64,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        Self {
            dim: 512,
            seed: 0x6e63_6f64_6572_2d31,
            radius: 2,
            buckets: 1 << 20,
        }
    }
}

impl EncoderConfig {
    /// Hex SHA-256 over every parameter that affects encoder output.
    pub fn config_hash(&self) -> String {
        let text = format!(
            "encoder-v{};dim={};seed={};radius={};buckets={}",
            ENCODER_VERSION, self.dim, self.seed, self.radius, self.buckets
        );
        let mut h = Sha256::new();
        h.update(text.as_bytes());
        let digest = h.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// FNV-1a, used instead of `DefaultHasher` because the stdlib hasher is not
/// stable across releases and these hashes are persisted indirectly via the
/// projection.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const CIRCULAR_BASE: u64 = 1 << 32;

/// Sparse feature map: fixed low ids for global counts, hashed ids for
/// circular substructures.
fn features(m: &Molecule, radius: u8, buckets: u64) -> HashMap<u64, f64> {
    let mut f: HashMap<u64, f64> = HashMap::new();
    let mut add = |id: u64, v: f64| *f.entry(id).or_insert(0.0) += v;

    // global count descriptors (ids 0..64)
    for (i, e) in Element::ALL.iter().enumerate() {
        let n = m.atoms().iter().filter(|a| a.element == *e).count();
        if n > 0 {
            add(i as u64, n as f64);
        }
    }
    add(20, m.atoms().iter().filter(|a| a.aromatic).count() as f64);
    add(21, m.atoms().iter().filter(|a| a.charge > 0).count() as f64);
    add(22, m.atoms().iter().filter(|a| a.charge < 0).count() as f64);
    add(23, m.total_hydrogens() as f64);
    add(24, m.atom_count() as f64);
    for b in m.bonds() {
        let id = match b.order {
            BondOrder::Single => 25,
            BondOrder::Double => 26,
            BondOrder::Triple => 27,
            BondOrder::Aromatic => 28,
        };
        add(id, 1.0);
    }
    let rings = ring_info(m);
    add(29, rings.rings.len() as f64);
    add(30, rings.fused_bonds as f64);
    add(31, rings.macrocycles as f64);
    add(32, rings.circuit_rank as f64);
    for i in 0..m.atom_count() {
        add(33 + (m.degree(i).min(4) as u64), 1.0);
    }

    // circular substructure shells
    let mut shell: Vec<u64> = (0..m.atom_count())
        .map(|i| {
            let a = m.atom(i);
            fnv1a(
                format!(
                    "{};{};{};{};{}",
                    a.element.symbol(),
                    a.charge,
                    a.aromatic,
                    a.hydrogens,
                    m.degree(i)
                )
                .as_bytes(),
            )
        })
        .collect();
    for r in 0..=radius {
        for &sig in &shell {
            let id = CIRCULAR_BASE + (splitmix(sig ^ (r as u64)) % buckets);
            add(id, 1.0);
        }
        if r == radius {
            break;
        }
        let next: Vec<u64> = (0..m.atom_count())
            .map(|i| {
                let mut env: Vec<u64> = m
                    .incident(i)
                    .iter()
                    .map(|&bi| {
                        let b = m.bond(bi);
                        splitmix(shell[b.other(i)] ^ ((b.order.code() as u64) << 56))
                    })
                    .collect();
                env.sort_unstable();
                let mut bytes = Vec::with_capacity(8 * (env.len() + 1));
                bytes.extend_from_slice(&shell[i].to_le_bytes());
                for e in env {
                    bytes.extend_from_slice(&e.to_le_bytes());
                }
                fnv1a(&bytes)
            })
            .collect();
        shell = next;
    }

    f
}

/// Deterministic encoder with a cached projection-column table. Cheap to
/// share: `encode` takes `&self`.
#[derive(Debug)]
pub struct Encoder {
    config: EncoderConfig,
    columns: Mutex<HashMap<u64, Vec<f64>>>,
}

impl Encoder {
    pub fn new(config: EncoderConfig) -> Self {
        Self {
            config,
            columns: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &EncoderConfig {
        &self.config
    }

    fn column(&self, feature: u64) -> Vec<f64> {
        let mut cache = self.columns.lock().unwrap();
        cache
            .entry(feature)
            .or_insert_with(|| {
                let mut rng =
                    ChaCha12Rng::seed_from_u64(splitmix(self.config.seed ^ splitmix(feature)));
                (0..self.config.dim)
                    .map(|_| StandardNormal.sample(&mut rng))
                    .collect()
            })
            .clone()
    }

    pub fn encode(&self, m: &Molecule) -> LatentVector {
        let mut out = vec![0.0f64; self.config.dim];
        // deterministic accumulation order
        let mut feats: Vec<(u64, f64)> = features(m, self.config.radius, self.config.buckets)
            .into_iter()
            .collect();
        feats.sort_unstable_by_key(|&(id, _)| id);
        for (id, value) in feats {
            let col = self.column(id);
            for (o, c) in out.iter_mut().zip(&col) {
                *o += value * c;
            }
        }
        let rms = (out.iter().map(|v| v * v).sum::<f64>() / self.config.dim as f64).sqrt();
        if rms > 0.0 {
            for o in &mut out {
                *o /= rms;
            }
        }
        LatentVector::new(out).expect("finite by construction")
    }
}

/// One-shot convenience around [`Encoder::encode`].
pub fn encode(config: &EncoderConfig, m: &Molecule) -> LatentVector {
    Encoder::new(config.clone()).encode(m)
}
