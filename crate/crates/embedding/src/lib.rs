//! The latent space: a deterministic reference encoder, a library-backed
//! nearest-neighbour decoder, continuous Tanimoto similarity, and
//! reconstruction checking.
//!
//! The encoder here is deliberately not a learned model — it is a fixed,
//! reproducible stand-in that satisfies the same contract (`Molecule` in,
//! finite `d`-vector out, deterministic), so the rest of the pipeline can be
//! exercised end-to-end and a trained encoder/decoder can be slotted in
//! later without touching downstream code.

pub mod encoder;
pub mod error;
pub mod index;
pub mod latent;

pub use encoder::{encode, Encoder, EncoderConfig, ENCODER_VERSION};
pub use error::{Error, Result};
pub use index::{IndexEntry, LibraryIndex, RejectedEntry};
pub use latent::{tanimoto_latent, LatentVector};
