//! Shared synthetic regression data for integration tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub const LINEAR_WEIGHTS: [f64; 5] = [3.0, -2.0, 1.5, 1.0, -0.5];

/// 500-row linear+noise regression set tuned for a theoretical Pearson R of
/// about 0.95: features uniform on [-1,1], uniform noise with standard
/// deviation 0.33x the signal's, so R = 1/sqrt(1+0.33^2) = 0.9497.
pub fn linear_noise_dataset(n: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let signal_var: f64 = LINEAR_WEIGHTS.iter().map(|w| w * w).sum::<f64>() / 3.0;
    let noise_sd = 0.33 * signal_var.sqrt();
    let half_width = noise_sd * 3.0_f64.sqrt(); // uniform(-h, h) has sd h/sqrt(3)
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let row: Vec<f64> = (0..LINEAR_WEIGHTS.len())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let signal: f64 = row
            .iter()
            .zip(LINEAR_WEIGHTS.iter())
            .map(|(xi, wi)| xi * wi)
            .sum();
        y.push(signal + rng.gen_range(-half_width..half_width));
        x.push(row);
    }
    (x, y)
}
