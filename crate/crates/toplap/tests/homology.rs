//! Randomized cross-validation of the spectral pipeline against exact
//! integer arithmetic: chain-complex identity, union-find component counts,
//! and rank-based persistent Betti numbers.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use toplap::{
    betti, boundary_matrix, integer_rank, persistent_betti_exact, persistent_laplacian, spectrum,
    union_find_components, FilteredComplex, RadiusGrid,
};

fn random_cloud(rng: &mut ChaCha12Rng, n: usize, side: f64) -> Vec<[f64; 3]> {
    (0..n)
        .map(|_| {
            [
                rng.gen_range(0.0..side),
                rng.gen_range(0.0..side),
                rng.gen_range(0.0..side),
            ]
        })
        .collect()
}

#[test]
fn chain_complex_identity_exact_on_1000_random_complexes() {
    let mut rng = ChaCha12Rng::seed_from_u64(404);
    for _ in 0..1000 {
        let n = rng.gen_range(4..=10);
        let side = rng.gen_range(2.0..5.0);
        let c = FilteredComplex::from_positions(random_cloud(&mut rng, n, side), 3.0);
        let r = rng.gen_range(0.5..3.0);
        let b1 = boundary_matrix(&c, 1, r).unwrap();
        let b2 = boundary_matrix(&c, 2, r).unwrap();
        let product = &b1 * &b2;
        assert!(
            product.iter().all(|&x| x == 0),
            "∂₁∂₂ ≠ 0 at radius {r} on {n} points"
        );
    }
}

#[test]
fn beta0_equals_union_find_on_100_random_clouds() {
    let mut rng = ChaCha12Rng::seed_from_u64(808);
    let grid = RadiusGrid::default();
    for cloud_idx in 0..100 {
        // Alternate dense and sparse clouds so component counts vary
        // across the whole radius grid.
        let side = if cloud_idx % 2 == 0 { 14.0 } else { 34.0 };
        let positions = random_cloud(&mut rng, 50, side);
        let c = FilteredComplex::from_positions(positions.clone(), grid.max_radius());
        for &t in &grid.t_values {
            for &p in &grid.p_values {
                let l = persistent_laplacian(&c, 0, t, p).unwrap();
                let spec = spectrum(&l).unwrap();
                let from_spectrum = betti(&spec);
                let from_union_find = union_find_components(&positions, t + p);
                assert_eq!(
                    from_spectrum, from_union_find,
                    "cloud {cloud_idx}, t={t}, p={p}"
                );
            }
        }
    }
}

#[test]
fn persistent_betti_matches_exact_rank_oracle_on_toy_filtrations() {
    let mut rng = ChaCha12Rng::seed_from_u64(1212);
    let t_values = [0.8, 1.1, 1.4, 1.8, 2.2];
    let p_values = [0.0, 0.3, 0.6];
    let mut nontrivial_q1 = 0usize;
    for cloud_idx in 0..40 {
        let n = rng.gen_range(6..=12);
        // Alternate generic random clouds with perturbed rings; the rings
        // guarantee the suite sees plenty of surviving 1-cycles.
        let positions = if cloud_idx % 2 == 0 {
            random_cloud(&mut rng, n, 5.5)
        } else {
            let radius = n as f64 * 1.4 / (2.0 * std::f64::consts::PI);
            (0..n)
                .map(|k| {
                    let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                    [
                        (radius + rng.gen_range(-0.15..0.15)) * theta.cos(),
                        (radius + rng.gen_range(-0.15..0.15)) * theta.sin(),
                        rng.gen_range(-0.2..0.2),
                    ]
                })
                .collect()
        };
        let c = FilteredComplex::from_positions(positions, 3.0);
        for q in [0usize, 1] {
            for &t in &t_values {
                for &p in &p_values {
                    let l = persistent_laplacian(&c, q, t, p).unwrap();
                    let spec = spectrum(&l).unwrap();
                    assert!(
                        spec.first().copied().unwrap_or(0.0) >= -1e-9,
                        "not PSD: {:?}",
                        spec.first()
                    );
                    let from_l = betti(&spec);
                    let exact = persistent_betti_exact(&c, q, t, p).unwrap();
                    assert_eq!(
                        from_l, exact,
                        "cloud {cloud_idx} (n={n}), q={q}, t={t}, p={p}"
                    );
                    if q == 1 && exact > 0 {
                        nontrivial_q1 += 1;
                    }
                }
            }
        }
    }
    // The suite must actually exercise surviving 1-cycles, not just zeros.
    assert!(nontrivial_q1 > 50, "only {nontrivial_q1} nontrivial q=1 cells");
}

#[test]
fn beta0_never_increases_with_radius() {
    let mut rng = ChaCha12Rng::seed_from_u64(55);
    for _ in 0..10 {
        let positions = random_cloud(&mut rng, 30, 18.0);
        let c = FilteredComplex::from_positions(positions, 10.5);
        let grid = RadiusGrid::default();
        let mut previous = usize::MAX;
        for &t in &grid.t_values {
            let l = persistent_laplacian(&c, 0, t, 0.0).unwrap();
            let count = betti(&spectrum(&l).unwrap());
            assert!(count <= previous, "β₀ rose from {previous} to {count} at t={t}");
            previous = count;
        }
    }
}

#[test]
fn six_cycle_first_betti_survives_small_persistence() {
    // Hexagon side 2: sides born at 1.0, short chords at √3 ≈ 1.732 (the
    // first triangles). Radii sit clear of those boundaries: at t=1.01 the
    // ring is alive; nothing can fill it until chord triangles appear, so
    // the cycle survives p=0.45 but dies by t+p = 1.81.
    let positions: Vec<[f64; 3]> = (0..6)
        .map(|k| {
            let theta = std::f64::consts::PI * k as f64 / 3.0;
            [2.0 * theta.cos(), 2.0 * theta.sin(), 0.0]
        })
        .collect();
    let c = FilteredComplex::from_positions(positions, 10.0);
    let alive = |t: f64, p: f64| {
        let l = persistent_laplacian(&c, 1, t, p).unwrap();
        betti(&spectrum(&l).unwrap())
    };
    assert_eq!(alive(1.01, 0.0), 1);
    assert_eq!(alive(1.01, 0.45), 1);
    assert_eq!(persistent_betti_exact(&c, 1, 1.01, 0.45).unwrap(), 1);
    assert_eq!(alive(1.01, 0.8), 0);
    assert_eq!(persistent_betti_exact(&c, 1, 1.01, 0.8).unwrap(), 0);
}

#[test]
fn tree_boundary_rank_matches_float_elimination() {
    // Independent float Gaussian elimination with partial pivoting,
    // cross-checking the exact integer rank on tree graphs.
    fn float_rank(m: &nalgebra::DMatrix<f64>) -> usize {
        let mut a = m.clone();
        let (rows, cols) = (a.nrows(), a.ncols());
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            let Some(pivot) = (row..rows)
                .max_by(|&x, &y| a[(x, col)].abs().total_cmp(&a[(y, col)].abs()))
                .filter(|&r| a[(r, col)].abs() > 1e-9)
            else {
                continue;
            };
            a.swap_rows(row, pivot);
            for r in (row + 1)..rows {
                let factor = a[(r, col)] / a[(row, col)];
                for c in col..cols {
                    a[(r, c)] -= factor * a[(row, c)];
                }
            }
            rank += 1;
            row += 1;
            if row == rows {
                break;
            }
        }
        rank
    }

    let mut rng = ChaCha12Rng::seed_from_u64(9);
    for n in [3usize, 5, 9, 14] {
        // Path graph: consecutive gaps just under the connection threshold,
        // so nonadjacent points stay disconnected — a tree with n−1 edges.
        let mut positions = vec![[0.0, 0.0, 0.0]];
        let mut x = 0.0;
        for _ in 1..n {
            x += rng.gen_range(1.7..1.95);
            positions.push([x, 0.0, 0.0]);
        }
        let c = FilteredComplex::from_positions(positions, 10.0);
        let b1 = boundary_matrix(&c, 1, 1.0).unwrap();
        assert_eq!(b1.ncols(), n - 1, "path with {n} vertices has n−1 edges");
        let as_float =
            nalgebra::DMatrix::from_fn(b1.nrows(), b1.ncols(), |r, c2| b1[(r, c2)] as f64);
        assert_eq!(integer_rank(&b1), n - 1);
        assert_eq!(float_rank(&as_float), n - 1);
    }
}
