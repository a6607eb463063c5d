//! Signed integer boundary matrices of a filtered complex at a given radius.

use nalgebra::DMatrix;

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};

/// Boundary matrix ∂_q at `radius`: rows are the (q−1)-simplices alive at
/// that radius, columns the q-simplices, entry (−1)^i for the i-th face.
/// Vertices are always alive, so ∂₁ has one row per vertex.
pub fn boundary_matrix(complex: &FilteredComplex, q: usize, radius: f64) -> Result<DMatrix<i64>> {
    complex.check_radius(radius)?;
    match q {
        1 => {
            let cols = complex.alive_edges(radius);
            let mut m = DMatrix::<i64>::zeros(complex.vertex_count(), cols.len());
            for (c, &ei) in cols.iter().enumerate() {
                let e = complex.edges()[ei];
                // ∂[a,b] = [b] − [a]
                m[(e.a, c)] = -1;
                m[(e.b, c)] = 1;
            }
            Ok(m)
        }
        2 => {
            let rows = complex.alive_edges(radius);
            let cols = complex.alive_triangles(radius);
            let row_of = |a: usize, b: usize| -> usize {
                let idx = complex
                    .edges()
                    .binary_search_by(|e| (e.a, e.b).cmp(&(a, b)))
                    .expect("triangle face must exist as an edge");
                rows.binary_search(&idx)
                    .expect("triangle face must be alive when the triangle is")
            };
            let mut m = DMatrix::<i64>::zeros(rows.len(), cols.len());
            for (c, &ti) in cols.iter().enumerate() {
                let t = complex.triangles()[ti];
                // ∂[a,b,c] = [b,c] − [a,c] + [a,b]
                m[(row_of(t.b, t.c), c)] = 1;
                m[(row_of(t.a, t.c), c)] = -1;
                m[(row_of(t.a, t.b), c)] = 1;
            }
            Ok(m)
        }
        other => Err(Error::OrderUnsupported { q: other }),
    }
}
