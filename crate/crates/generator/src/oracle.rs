//! Distribution-level test oracles: Gaussian CDF, Kolmogorov–Smirnov
//! statistics with asymptotic p-values, and histogram total-variation
//! distance against a normal law. These back every statistical claim made
//! about the samplers.

use statrs::function::erf::erf;

/// Φ((x − mean)/sd).
pub fn normal_cdf(x: f64, mean: f64, sd: f64) -> f64 {
    0.5 * (1.0 + erf((x - mean) / (sd * std::f64::consts::SQRT_2)))
}

/// Survival function of the Kolmogorov distribution at λ, via the standard
/// alternating series 2 Σ (−1)^{j−1} e^{−2 j² λ²}.
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 1e-8 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=100 {
        let term = (-2.0 * (j as f64) * (j as f64) * lambda * lambda).exp();
        sum += sign * term;
        sign = -sign;
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

fn ks_p(d: f64, effective_n: f64) -> f64 {
    // finite-sample effective-λ correction (Stephens)
    let sq = effective_n.sqrt();
    kolmogorov_q((sq + 0.12 + 0.11 / sq) * d)
}

/// Two-sample KS statistic and asymptotic p-value.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> (f64, f64) {
    assert!(!a.is_empty() && !b.is_empty(), "ks on empty sample");
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let x = xs[i].min(ys[j]);
        while i < n && xs[i] <= x {
            i += 1;
        }
        while j < m && ys[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n as f64 * m as f64) / (n as f64 + m as f64);
    (d, ks_p(d, ne))
}

/// One-sample KS statistic and p-value against an arbitrary CDF.
pub fn one_sample_ks(samples: &[f64], cdf: impl Fn(f64) -> f64) -> (f64, f64) {
    assert!(!samples.is_empty(), "ks on empty sample");
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let c = cdf(x);
        d = d.max((c - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - c).abs());
    }
    (d, ks_p(d, n))
}

/// Total-variation distance between the empirical histogram of `samples`
/// and a normal law, over `bins` equal-width bins spanning mean ± 5 sd
/// (the two edge bins absorb everything beyond, and the analytic masses of
/// the first and last bins extend to ∓∞, so both sides sum to one).
pub fn tv_distance_vs_normal(samples: &[f64], mean: f64, sd: f64, bins: usize) -> f64 {
    assert!(bins >= 2 && !samples.is_empty() && sd > 0.0);
    let lo = mean - 5.0 * sd;
    let hi = mean + 5.0 * sd;
    let width = (hi - lo) / bins as f64;

    let mut counts = vec![0u64; bins];
    for &x in samples {
        let idx = ((x - lo) / width).floor();
        let idx = (idx.max(0.0) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let n = samples.len() as f64;

    let mut tv = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        let left = if i == 0 {
            0.0
        } else {
            normal_cdf(lo + i as f64 * width, mean, sd)
        };
        let right = if i == bins - 1 {
            1.0
        } else {
            normal_cdf(lo + (i + 1) as f64 * width, mean, sd)
        };
        tv += (c as f64 / n - (right - left)).abs();
    }
    0.5 * tv
}
