//! Persistent combinatorial Laplacians, their spectra and Betti numbers.
//!
//! L_q at (t, p) couples the complex at radius t with the larger complex at
//! radius t+p: the up-term uses only (q+1)-simplices alive at t+p whose
//! boundary stays inside the radius-t complex; the down-term is the ordinary
//! q-boundary at radius t. The number of (near-)zero eigenvalues counts the
//! q-cycles of the radius-t complex that survive to radius t+p.

use nalgebra::DMatrix;

use crate::boundary::boundary_matrix;
use crate::complex::FilteredComplex;
use crate::error::{Error, Result};

/// Relative tolerance for treating an eigenvalue as zero.
pub const ZERO_EIGENVALUE_EPS: f64 = 1e-8;

/// Symmetry tolerance for spectrum input.
pub const SYMMETRY_TOL: f64 = 1e-10;

fn to_f64(m: &DMatrix<i64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)] as f64)
}

/// Graph Laplacian of the 1-skeleton at `radius`: degrees on the diagonal,
/// −1 for every alive edge.
fn graph_laplacian(complex: &FilteredComplex, radius: f64) -> DMatrix<f64> {
    let n = complex.vertex_count();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for &ei in &complex.alive_edges(radius) {
        let e = complex.edges()[ei];
        l[(e.a, e.a)] += 1.0;
        l[(e.b, e.b)] += 1.0;
        l[(e.a, e.b)] -= 1.0;
        l[(e.b, e.a)] -= 1.0;
    }
    l
}

/// Orthonormal basis of the null space of `m`ᵀ`m` (i.e. of null(m)),
/// obtained from the symmetric eigendecomposition.
fn null_space_basis(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    let gram = m.transpose() * m;
    let eig = gram.symmetric_eigen();
    let max = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let tol = 1e-9 * max.max(1.0);
    let keep: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] <= tol).collect();
    let mut z = DMatrix::<f64>::zeros(n, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        z.set_column(c, &eig.eigenvectors.column(i));
    }
    z
}

/// The persistent q-Laplacian matrix at filtration radius `t` with
/// persistence `p`. Row/column space: q-simplices alive at radius t.
pub fn persistent_laplacian(
    complex: &FilteredComplex,
    q: usize,
    t: f64,
    p: f64,
) -> Result<DMatrix<f64>> {
    if q > 2 {
        return Err(Error::OrderUnsupported { q });
    }
    complex.check_radius(t + p)?;
    match q {
        0 => Ok(graph_laplacian(complex, t + p)),
        1 => {
            let edges_t = complex.alive_edges(t);
            let n_edges = edges_t.len();
            if n_edges == 0 {
                return Ok(DMatrix::zeros(0, 0));
            }
            // Down-term over the radius-t edges.
            let b1t = to_f64(&boundary_matrix(complex, 1, t)?);
            let mut l = b1t.transpose() * &b1t;
            // Up-term: triangles at t+p whose boundary lies in the radius-t
            // edge span. Split the full ∂₂ rows into edges of K_t and edges
            // born later; restrict to the null space of the late block.
            let triangles = complex.alive_triangles(t + p);
            if !triangles.is_empty() {
                let edges_tp = complex.alive_edges(t + p);
                let d = to_f64(&boundary_matrix(complex, 2, t + p)?);
                let in_rows: Vec<usize> = (0..edges_tp.len())
                    .filter(|&r| complex.edges()[edges_tp[r]].birth <= t)
                    .collect();
                let out_rows: Vec<usize> = (0..edges_tp.len())
                    .filter(|&r| complex.edges()[edges_tp[r]].birth > t)
                    .collect();
                debug_assert_eq!(in_rows.len(), n_edges);
                let d_in = d.select_rows(in_rows.iter());
                let d_out = d.select_rows(out_rows.iter());
                let z = null_space_basis(&d_out);
                if z.ncols() > 0 {
                    let up = &d_in * &z;
                    l += &up * up.transpose();
                }
            }
            Ok(l)
        }
        2 => {
            // No 3-simplices are tracked, so the up-term vanishes.
            let b2t = to_f64(&boundary_matrix(complex, 2, t)?);
            Ok(b2t.transpose() * &b2t)
        }
        _ => unreachable!(),
    }
}

/// Eigenvalues of a symmetric matrix, sorted ascending.
pub fn spectrum(matrix: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = matrix.nrows();
    if n != matrix.ncols() {
        return Err(Error::NonSymmetric {
            max_deviation: f64::INFINITY,
        });
    }
    let mut max_dev = 0.0f64;
    for r in 0..n {
        for c in (r + 1)..n {
            max_dev = max_dev.max((matrix[(r, c)] - matrix[(c, r)]).abs());
        }
    }
    if max_dev > SYMMETRY_TOL {
        return Err(Error::NonSymmetric {
            max_deviation: max_dev,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = matrix
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .collect();
    values.sort_unstable_by(|a, b| a.total_cmp(b));
    Ok(values)
}

/// Count of zero eigenvalues under the relative tolerance rule:
/// λ counts as zero when λ ≤ ε·max(1, λ_max).
pub fn betti(spectrum: &[f64]) -> usize {
    let Some(&max) = spectrum.last() else {
        return 0;
    };
    let threshold = ZERO_EIGENVALUE_EPS * max.max(1.0);
    spectrum.iter().filter(|&&v| v <= threshold).count()
}

/// A computed spectrum with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    pub q: usize,
    pub t: f64,
    pub p: f64,
    pub eigenvalues: Vec<f64>,
    pub betti: usize,
}

/// Convenience: Laplacian → spectrum → Betti count in one call.
pub fn spectral_summary(
    complex: &FilteredComplex,
    q: usize,
    t: f64,
    p: f64,
) -> Result<SpectralSummary> {
    let l = persistent_laplacian(complex, q, t, p)?;
    let eigenvalues = spectrum(&l)?;
    let betti = betti(&eigenvalues);
    Ok(SpectralSummary {
        q,
        t,
        p,
        eigenvalues,
        betti,
    })
}
