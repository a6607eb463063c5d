//! Persistence for generated latent batches, so a campaign can be resumed or
//! split between a generate step and a screen step.

use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use embedding::LatentVector;

use crate::error::{Error, Result};
use crate::schedule::GeneratedSample;

const MAGIC: &[u8; 8] = b"GNCBATCH";
const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct BatchHeader {
    pub dim: usize,
    pub count: usize,
    pub rng_seed: u64,
    /// Hex SHA-256 of the drift spec that produced the batch.
    pub spec_hash: String,
}

pub fn save_batch(
    path: impl AsRef<Path>,
    samples: &[GeneratedSample],
    rng_seed: u64,
    spec_hash: &str,
) -> Result<()> {
    let path = path.as_ref();
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    };
    let dim = samples.first().map_or(0, |s| s.vector.dim());
    if samples.iter().any(|s| s.vector.dim() != dim) {
        return Err(Error::BadBatchFile {
            detail: "samples have mixed dimensions".into(),
        });
    }
    if spec_hash.len() != 64 || !spec_hash.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(Error::BadBatchFile {
            detail: "spec hash must be 64 hex chars".into(),
        });
    }
    let mut w = BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
    let mut put = |bytes: &[u8]| w.write_all(bytes).map_err(io_err);
    put(MAGIC)?;
    put(&FORMAT_VERSION.to_le_bytes())?;
    put(&(dim as u64).to_le_bytes())?;
    put(&(samples.len() as u64).to_le_bytes())?;
    put(&rng_seed.to_le_bytes())?;
    put(spec_hash.as_bytes())?;
    for s in samples {
        put(&(s.trajectory as u64).to_le_bytes())?;
        put(&s.time.to_le_bytes())?;
        for v in s.vector.values() {
            put(&v.to_le_bytes())?;
        }
    }
    w.flush().map_err(io_err)
}

pub fn load_batch(path: impl AsRef<Path>) -> Result<(BatchHeader, Vec<GeneratedSample>)> {
    let path = path.as_ref();
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    };
    let mut r = BufReader::new(std::fs::File::open(path).map_err(io_err)?);
    let bad = |detail: &str| Error::BadBatchFile {
        detail: detail.to_string(),
    };

    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(io_err)?;
    if &magic != MAGIC {
        return Err(bad("magic bytes do not match"));
    }
    let mut u32buf = [0u8; 4];
    r.read_exact(&mut u32buf).map_err(io_err)?;
    let version = u32::from_le_bytes(u32buf);
    if version != FORMAT_VERSION {
        return Err(bad(&format!(
            "format v{version}, this build reads v{FORMAT_VERSION}"
        )));
    }
    let mut u64buf = [0u8; 8];
    let mut read_u64 = |r: &mut BufReader<std::fs::File>| -> Result<u64> {
        r.read_exact(&mut u64buf).map_err(io_err)?;
        Ok(u64::from_le_bytes(u64buf))
    };
    let dim = read_u64(&mut r)? as usize;
    let count = read_u64(&mut r)? as usize;
    let rng_seed = read_u64(&mut r)?;
    let mut hash = [0u8; 64];
    r.read_exact(&mut hash).map_err(io_err)?;
    let spec_hash = String::from_utf8(hash.to_vec()).map_err(|_| bad("spec hash not utf-8"))?;

    let mut samples = Vec::with_capacity(count);
    let mut f64buf = [0u8; 8];
    for _ in 0..count {
        r.read_exact(&mut f64buf).map_err(io_err)?;
        let trajectory = u64::from_le_bytes(f64buf) as usize;
        r.read_exact(&mut f64buf).map_err(io_err)?;
        let time = f64::from_le_bytes(f64buf);
        let mut values = Vec::with_capacity(dim);
        for _ in 0..dim {
            r.read_exact(&mut f64buf).map_err(io_err)?;
            values.push(f64::from_le_bytes(f64buf));
        }
        samples.push(GeneratedSample {
            trajectory,
            time,
            vector: LatentVector::new(values)?,
        });
    }
    Ok((
        BatchHeader {
            dim,
            count,
            rng_seed,
            spec_hash,
        },
        samples,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{generate, GenerationSchedule};
    use crate::spec::DriftSpec;

    fn samples() -> (Vec<GeneratedSample>, String) {
        let r = LatentVector::new(vec![0.5, -0.5, 1.0]).unwrap();
        let spec = DriftSpec::new(vec![r], vec![1.0]).unwrap();
        let c = LatentVector::new(vec![2.0, 2.0, 2.0]).unwrap();
        let schedule = GenerationSchedule {
            trajectories: 2,
            rng_seed: 17,
            ..Default::default()
        };
        (generate(&c, &spec, &schedule).unwrap(), spec.hash())
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("batch.bin");
        let (samples, hash) = samples();
        save_batch(&path, &samples, 17, &hash).unwrap();
        let (header, loaded) = load_batch(&path).unwrap();
        assert_eq!(header.dim, 3);
        assert_eq!(header.count, samples.len());
        assert_eq!(header.rng_seed, 17);
        assert_eq!(header.spec_hash, hash);
        assert_eq!(loaded.len(), samples.len());
        for (a, b) in samples.iter().zip(&loaded) {
            assert_eq!(a.trajectory, b.trajectory);
            assert_eq!(a.time.to_bits(), b.time.to_bits());
            for (x, y) in a.vector.values().iter().zip(b.vector.values()) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn corrupted_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("batch.bin");
        let (samples, hash) = samples();
        save_batch(&path, &samples, 17, &hash).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[3] ^= 0xff;
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(
            load_batch(&path).unwrap_err(),
            Error::BadBatchFile { .. }
        ));
    }

    #[test]
    fn bad_spec_hash_rejected_at_save() {
        let dir = tempfile::tempdir().unwrap();
        let (samples, _) = samples();
        let err = save_batch(dir.path().join("b.bin"), &samples, 0, "nothex").unwrap_err();
        assert!(matches!(err, Error::BadBatchFile { .. }));
    }
}
