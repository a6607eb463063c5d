//! Frozen spectral values for hand-checkable geometries, plus geometric
//! invariance of the fingerprint.

use molgraph::{Element, LabeledPoint, LabeledPointCloud};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use toplap::{
    persistent_betti_exact, spectral_summary, tl_fingerprint, ElementFilter, FilteredComplex,
    FingerprintConfig, RadiusGrid,
};

/// Regular n-gon of the given side length in the xy-plane.
fn regular_polygon(n: usize, side: f64) -> Vec<[f64; 3]> {
    let circumradius = side / (2.0 * (std::f64::consts::PI / n as f64).sin());
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            [circumradius * theta.cos(), circumradius * theta.sin(), 0.0]
        })
        .collect()
}

fn carbon_cloud(positions: Vec<[f64; 3]>) -> LabeledPointCloud {
    LabeledPointCloud {
        points: positions
            .into_iter()
            .map(|position| LabeledPoint {
                element: Element::C,
                position,
            })
            .collect(),
    }
}

#[test]
fn triangle_spectrum_frozen() {
    let c = FilteredComplex::from_positions(regular_polygon(3, 2.0), 10.0);
    let s = spectral_summary(&c, 0, 1.5, 0.0).unwrap();
    let expected = [0.0, 3.0, 3.0];
    assert_eq!(s.eigenvalues.len(), 3);
    for (got, want) in s.eigenvalues.iter().zip(expected) {
        assert!((got - want).abs() < 1e-9, "got {got}, want {want}");
    }
}

#[test]
fn six_cycle_spectrum_matches_circulant_closed_form() {
    // Ring Laplacian eigenvalues are 2 − 2cos(2πk/6): {0, 1, 1, 3, 3, 4}.
    let mut expected: Vec<f64> = (0..6)
        .map(|k| 2.0 - 2.0 * (2.0 * std::f64::consts::PI * k as f64 / 6.0).cos())
        .collect();
    expected.sort_unstable_by(|a, b| a.total_cmp(b));
    let frozen = [0.0, 1.0, 1.0, 3.0, 3.0, 4.0];
    for (a, b) in expected.iter().zip(frozen) {
        assert!((a - b).abs() < 1e-12);
    }

    // Hexagon with side 2: just past radius 1 exactly the six sides are
    // alive (radius sits clear of the floating-point birth boundary; the
    // next edges arrive at √3 ≈ 1.732).
    let c = FilteredComplex::from_positions(regular_polygon(6, 2.0), 10.0);
    assert_eq!(c.alive_edges(1.01).len(), 6);
    let s = spectral_summary(&c, 0, 1.01, 0.0).unwrap();
    assert_eq!(s.eigenvalues.len(), 6);
    for (got, want) in s.eigenvalues.iter().zip(frozen) {
        assert!((got - want).abs() < 1e-9, "got {got}, want {want}");
    }
    assert_eq!(s.betti, 1);
}

#[test]
fn benzene_carbons_form_chordless_hexagon() {
    // Aromatic ring geometry: side 1.39 Å; next-nearest pairs sit at
    // 1.39·√3 ≈ 2.41 Å, so radius 0.75 (threshold 1.5 Å) yields the pure
    // 6-cycle: six edges, no chords, one surviving 1-cycle.
    let c = FilteredComplex::from_positions(regular_polygon(6, 1.39), 10.0);
    assert_eq!(c.alive_edges(0.75).len(), 6);
    assert_eq!(c.alive_triangles(0.75).len(), 0);
    let s0 = spectral_summary(&c, 0, 0.75, 0.0).unwrap();
    assert_eq!(s0.betti, 1);
    let s1 = spectral_summary(&c, 1, 0.75, 0.0).unwrap();
    assert_eq!(s1.betti, 1);
    assert_eq!(persistent_betti_exact(&c, 1, 0.75, 0.0).unwrap(), 1);
}

#[test]
fn triangle_fingerprint_block_frozen() {
    // Equilateral side 2 at t=1.5: complete graph spectrum {0,3,3} →
    // block [β₀, sum, mean, median, max, min, std, var, Σλ²].
    let cloud = carbon_cloud(regular_polygon(3, 2.0));
    let config = FingerprintConfig {
        element_sets: vec![ElementFilter::Elements(vec![Element::C])],
        grid: RadiusGrid {
            t_values: vec![1.5],
            p_values: vec![0.0],
        },
        orders: vec![0],
    };
    let fp = tl_fingerprint(&cloud, &config).unwrap();
    let expected = [1.0, 6.0, 3.0, 3.0, 3.0, 3.0, 0.0, 0.0, 18.0];
    assert_eq!(fp.values.len(), 9);
    for (got, want) in fp.values.iter().zip(expected) {
        assert!((got - want).abs() < 1e-9, "got {got}, want {want}");
    }
    assert_eq!(fp.populated, vec![true]);
}

#[test]
fn fingerprint_invariant_under_rigid_motion() {
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    let mut points = Vec::new();
    let elements = [Element::C, Element::N, Element::O, Element::C, Element::C];
    for k in 0..10 {
        points.push(LabeledPoint {
            element: elements[k % elements.len()],
            position: [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ],
        });
    }
    let cloud = LabeledPointCloud { points };

    // Compose rotations about z and y with a translation.
    let (a, b): (f64, f64) = (rng.gen_range(0.0..6.28), rng.gen_range(0.0..6.28));
    let shift = [3.7, -1.2, 9.5];
    let rotate = |p: [f64; 3]| {
        let (x, y, z) = (p[0], p[1], p[2]);
        let (x1, y1) = (x * a.cos() - y * a.sin(), x * a.sin() + y * a.cos());
        let (x2, z2) = (x1 * b.cos() + z * b.sin(), -x1 * b.sin() + z * b.cos());
        [x2 + shift[0], y1 + shift[1], z2 + shift[2]]
    };
    let moved = LabeledPointCloud {
        points: cloud
            .points
            .iter()
            .map(|p| LabeledPoint {
                element: p.element,
                position: rotate(p.position),
            })
            .collect(),
    };

    let config = FingerprintConfig {
        element_sets: vec![
            ElementFilter::Elements(vec![Element::C]),
            ElementFilter::AllHeavy,
        ],
        grid: RadiusGrid {
            t_values: vec![1.0, 1.5, 2.0, 2.5],
            p_values: vec![0.0, 0.5],
        },
        orders: vec![0, 1],
    };
    let fp_a = tl_fingerprint(&cloud, &config).unwrap();
    let fp_b = tl_fingerprint(&moved, &config).unwrap();
    assert_eq!(fp_a.populated, fp_b.populated);
    for (x, y) in fp_a.values.iter().zip(&fp_b.values) {
        assert!((x - y).abs() < 1e-8, "{x} vs {y}");
    }
}

#[test]
fn single_atom_every_cell() {
    let cloud = carbon_cloud(vec![[1.0, 2.0, 3.0]]);
    let fp = tl_fingerprint(&cloud, &FingerprintConfig::default()).unwrap();
    assert_eq!(fp.values.len(), 7 * 19 * 2 * 9);
    // Carbon / carbon-containing / heavy sets: β₀ = 1, stats zero.
    // Pure N / O / N,O sets: unpopulated zero blocks.
    for (cell, flags) in fp.populated.iter().enumerate() {
        let block = &fp.values[cell * 9..(cell + 1) * 9];
        if *flags {
            assert_eq!(block[0], 1.0);
        } else {
            assert_eq!(block[0], 0.0);
        }
        assert!(block[1..].iter().all(|&x| x == 0.0));
    }
}
