//! Persistent spectral analysis of molecular point clouds.
//!
//! Pipeline: select atoms by element → build a distance filtration
//! (vertices, edges, triangles with birth radii) → assemble persistent
//! combinatorial Laplacians at (t, p) grid cells → summarise each spectrum
//! into a fixed-layout statistics fingerprint. Exact integer oracles
//! (rank-based Betti numbers, union-find components) validate the spectral
//! path in the test suites.

pub mod boundary;
pub mod complex;
pub mod error;
pub mod fingerprint;
pub mod laplacian;
pub mod oracle;

pub use boundary::boundary_matrix;
pub use complex::{build_filtration, Edge, ElementFilter, FilteredComplex, RadiusGrid, Triangle};
pub use error::{Error, Result};
pub use fingerprint::{
    tl_fingerprint, FingerprintConfig, TLFingerprint, STATS_PER_CELL,
};
pub use laplacian::{
    betti, persistent_laplacian, spectral_summary, spectrum, SpectralSummary,
    SYMMETRY_TOL, ZERO_EIGENVALUE_EPS,
};
pub use oracle::{integer_rank, persistent_betti_exact, union_find_components};
