//! Vietoris–Rips style filtered complexes over element-selected point clouds.
//!
//! Radius convention: an edge between two points is alive at radius `r`
//! when their Euclidean distance is ≤ 2r (two balls of radius r intersect),
//! so its birth radius is half the distance. A triangle is born when its
//! last edge is born. Vertices are present from radius 0.

use molgraph::{Element, LabeledPointCloud};

use crate::error::{Error, Result};

/// Which atoms of a cloud participate in the complex.
#[derive(Debug, Clone, PartialEq)]
pub enum ElementFilter {
    /// Only atoms whose element appears in the list.
    Elements(Vec<Element>),
    /// Every non-hydrogen atom.
    AllHeavy,
}

impl ElementFilter {
    pub fn matches(&self, element: Element) -> bool {
        match self {
            ElementFilter::Elements(list) => list.contains(&element),
            ElementFilter::AllHeavy => element != Element::H,
        }
    }

    /// Compact label used in fingerprint layout descriptors.
    pub fn label(&self) -> String {
        match self {
            ElementFilter::Elements(list) => list
                .iter()
                .map(|e| e.symbol())
                .collect::<Vec<_>>()
                .join(","),
            ElementFilter::AllHeavy => "heavy".to_string(),
        }
    }
}

/// The (t, p) evaluation grid for persistent spectra, in ångströms.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusGrid {
    pub t_values: Vec<f64>,
    pub p_values: Vec<f64>,
}

impl Default for RadiusGrid {
    fn default() -> Self {
        let t_values = (0..19).map(|k| 1.0 + 0.5 * k as f64).collect();
        RadiusGrid {
            t_values,
            p_values: vec![0.0, 0.5],
        }
    }
}

impl RadiusGrid {
    pub fn validate(&self) -> Result<()> {
        if self.t_values.is_empty() || self.p_values.is_empty() {
            return Err(Error::InvalidGrid {
                detail: "grid axes must be nonempty".into(),
            });
        }
        let ascending = |v: &[f64]| v.windows(2).all(|w| w[0] < w[1]);
        if !ascending(&self.t_values) || !ascending(&self.p_values) {
            return Err(Error::InvalidGrid {
                detail: "grid values must be strictly ascending".into(),
            });
        }
        if self.t_values[0] <= 0.0 || self.p_values[0] < 0.0 || !self.max_radius().is_finite() {
            return Err(Error::InvalidGrid {
                detail: "t must be positive, p nonnegative, all finite".into(),
            });
        }
        Ok(())
    }

    /// Largest radius any (t, p) cell will query.
    pub fn max_radius(&self) -> f64 {
        let t = self.t_values.last().copied().unwrap_or(0.0);
        let p = self.p_values.last().copied().unwrap_or(0.0);
        t + p
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub birth: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub birth: f64,
}

/// A filtered complex: all vertices, plus every edge and triangle whose
/// birth radius is within the build radius, orientation by ascending index.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    positions: Vec<[f64; 3]>,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    max_radius: f64,
}

fn distance(p: &[f64; 3], q: &[f64; 3]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let dz = p[2] - q[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

impl FilteredComplex {
    /// Build directly from raw positions (no element filtering).
    pub fn from_positions(positions: Vec<[f64; 3]>, max_radius: f64) -> FilteredComplex {
        let n = positions.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let birth = distance(&positions[a], &positions[b]) / 2.0;
                if birth <= max_radius {
                    edges.push(Edge { a, b, birth });
                }
            }
        }
        // Edge birth lookup for triangle assembly; edges are lex sorted.
        let find = |a: usize, b: usize| -> Option<f64> {
            edges
                .binary_search_by(|e| (e.a, e.b).cmp(&(a, b)))
                .ok()
                .map(|i| edges[i].birth)
        };
        let mut triangles = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let Some(ab) = find(a, b) else { continue };
                for c in (b + 1)..n {
                    let (Some(ac), Some(bc)) = (find(a, c), find(b, c)) else {
                        continue;
                    };
                    let birth = ab.max(ac).max(bc);
                    triangles.push(Triangle { a, b, c, birth });
                }
            }
        }
        FilteredComplex {
            positions,
            edges,
            triangles,
            max_radius,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[[f64; 3]] {
        &self.positions
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }

    pub(crate) fn check_radius(&self, radius: f64) -> Result<()> {
        if radius > self.max_radius {
            return Err(Error::RadiusBeyondComplex {
                requested: radius,
                max: self.max_radius,
            });
        }
        Ok(())
    }

    /// Indices (into `edges`) of the edges alive at `radius`.
    pub fn alive_edges(&self, radius: f64) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.birth <= radius)
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices (into `triangles`) of the triangles alive at `radius`.
    pub fn alive_triangles(&self, radius: f64) -> Vec<usize> {
        self.triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| t.birth <= radius)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Select the matching atoms of `cloud` and build their filtered complex
/// with every simplex born at or below `grid.max_radius()`.
pub fn build_filtration(
    cloud: &LabeledPointCloud,
    filter: &ElementFilter,
    grid: &RadiusGrid,
) -> Result<FilteredComplex> {
    grid.validate()?;
    let positions: Vec<[f64; 3]> = cloud
        .points
        .iter()
        .filter(|p| filter.matches(p.element))
        .map(|p| p.position)
        .collect();
    if positions.is_empty() {
        return Err(Error::EmptySelection);
    }
    Ok(FilteredComplex::from_positions(
        positions,
        grid.max_radius(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use molgraph::LabeledPoint;

    fn cloud_of(points: &[(Element, [f64; 3])]) -> LabeledPointCloud {
        LabeledPointCloud {
            points: points
                .iter()
                .map(|(element, position)| LabeledPoint {
                    element: *element,
                    position: *position,
                })
                .collect(),
        }
    }

    #[test]
    fn two_points_edge_threshold() {
        let c = FilteredComplex::from_positions(vec![[0.0; 3], [3.0, 0.0, 0.0]], 10.0);
        assert_eq!(c.alive_edges(1.0).len(), 0);
        assert_eq!(c.alive_edges(1.6).len(), 1);
        // boundary radius included: distance ≤ 2r at exactly r = 1.5
        assert_eq!(c.alive_edges(1.5).len(), 1);
    }

    #[test]
    fn triangle_birth_is_max_pairwise_half_distance() {
        let c = FilteredComplex::from_positions(
            vec![[0.0; 3], [2.0, 0.0, 0.0], [0.0, 3.0, 0.0]],
            10.0,
        );
        assert_eq!(c.triangles().len(), 1);
        let expected = (2.0f64 * 2.0 + 3.0 * 3.0).sqrt() / 2.0;
        assert!((c.triangles()[0].birth - expected).abs() < 1e-15);
        for t in c.triangles() {
            for e in c.edges() {
                assert!(t.birth >= e.birth - 1e-15);
            }
        }
    }

    #[test]
    fn element_filter_selects_and_rejects() {
        let cloud = cloud_of(&[
            (Element::C, [0.0; 3]),
            (Element::N, [1.0, 0.0, 0.0]),
            (Element::H, [2.0, 0.0, 0.0]),
        ]);
        let grid = RadiusGrid::default();
        let carbons =
            build_filtration(&cloud, &ElementFilter::Elements(vec![Element::C]), &grid).unwrap();
        assert_eq!(carbons.vertex_count(), 1);
        let heavy = build_filtration(&cloud, &ElementFilter::AllHeavy, &grid).unwrap();
        assert_eq!(heavy.vertex_count(), 2);
        let err = build_filtration(&cloud, &ElementFilter::Elements(vec![Element::S]), &grid);
        assert_eq!(err.unwrap_err(), Error::EmptySelection);
    }

    #[test]
    fn simplices_beyond_build_radius_are_absent() {
        let c = FilteredComplex::from_positions(vec![[0.0; 3], [9.0, 0.0, 0.0]], 2.0);
        assert!(c.edges().is_empty());
        assert!(c.check_radius(2.0).is_ok());
        assert!(matches!(
            c.check_radius(2.5),
            Err(Error::RadiusBeyondComplex { .. })
        ));
    }

    #[test]
    fn default_grid_matches_contract() {
        let g = RadiusGrid::default();
        g.validate().unwrap();
        assert_eq!(g.t_values.len(), 19);
        assert_eq!(g.t_values[0], 1.0);
        assert_eq!(*g.t_values.last().unwrap(), 10.0);
        assert_eq!(g.p_values, vec![0.0, 0.5]);
        assert_eq!(g.max_radius(), 10.5);
    }

    #[test]
    fn bad_grids_rejected() {
        let empty = RadiusGrid {
            t_values: vec![],
            p_values: vec![0.0],
        };
        assert!(matches!(
            empty.validate(),
            Err(Error::InvalidGrid { .. })
        ));
        let unsorted = RadiusGrid {
            t_values: vec![2.0, 1.0],
            p_values: vec![0.0],
        };
        assert!(matches!(
            unsorted.validate(),
            Err(Error::InvalidGrid { .. })
        ));
    }
}
