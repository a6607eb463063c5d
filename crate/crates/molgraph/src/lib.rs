//! Molecular graphs and everything that hangs off them: SMILES parsing and
//! writing, canonical forms, isomorphism, ring analysis, additive property
//! surrogates (Log P, synthetic accessibility), 3D structure input, and a
//! deterministic molecule corpus for fixtures.

pub mod canon;
pub mod corpus;
pub mod element;
pub mod error;
pub mod iso;
mod kekule;
pub mod logp;
pub mod molecule;
pub mod rings;
pub mod sas;
pub mod smiles;
pub mod structure;
pub mod variants;
mod writer;

pub use canon::{canonical_ranks, canonical_smiles, symmetry_classes, write_smiles};
pub use element::Element;
pub use error::{Error, Result};
pub use iso::{are_isomorphic, automorphism_orbits};
pub use logp::{logp_estimate, LogPEstimate};
pub use molecule::{Atom, Bond, BondOrder, Molecule};
pub use rings::{ring_info, RingInfo};
pub use sas::{sas_estimate, SasBreakdown};
pub use smiles::{parse_smiles, parse_smiles_full, Warning};
pub use structure::{load_structure, parse_sdf, parse_xyz, LabeledPoint, LabeledPointCloud};
pub use variants::{attach_hydroxyl, hydroxyl_variants};
