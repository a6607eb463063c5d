//! Closed-form law of the process at time t, used as the oracle for every
//! sampler test: starting from C, the state is Gaussian with
//! mean C e^{−αt} + (1 − e^{−αt}) m and per-coordinate variance
//! σ²(1 − e^{−2αt})/(2α).

use embedding::LatentVector;

use crate::error::{Error, Result};
use crate::spec::{drift_target, DriftSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Moments {
    pub mean: LatentVector,
    /// Identical for every coordinate (isotropic noise).
    pub variance: f64,
}

pub fn analytic_moments(c: &LatentVector, spec: &DriftSpec, t: f64) -> Result<Moments> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidSchedule {
            detail: format!("time must be nonnegative, got {t}"),
        });
    }
    let m = drift_target(spec)?;
    if c.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            a: c.dim(),
            b: m.dim(),
        });
    }
    let decay = (-spec.alpha * t).exp();
    let mean = LatentVector::new(
        c.values()
            .iter()
            .zip(m.values())
            .map(|(&ci, &mi)| ci * decay + (1.0 - decay) * mi)
            .collect(),
    )?;
    let variance = spec.sigma * spec.sigma * (1.0 - (-2.0 * spec.alpha * t).exp())
        / (2.0 * spec.alpha);
    Ok(Moments { mean, variance })
}

/// σ²/(2α): the variance limit as t → ∞.
pub fn stationary_variance(spec: &DriftSpec) -> f64 {
    spec.sigma * spec.sigma / (2.0 * spec.alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(values: &[f64]) -> LatentVector {
        LatentVector::new(values.to_vec()).unwrap()
    }

    fn spec_1d(m: f64, alpha: f64, sigma: f64) -> DriftSpec {
        DriftSpec::new(vec![v(&[m])], vec![1.0])
            .unwrap()
            .with_alpha(alpha)
            .unwrap()
            .with_sigma(sigma)
            .unwrap()
    }

    #[test]
    fn time_zero_returns_the_start() {
        let spec = spec_1d(5.0, 0.15, 1.0);
        let c = v(&[-2.0]);
        let m = analytic_moments(&c, &spec, 0.0).unwrap();
        assert_eq!(m.mean, c);
        assert_eq!(m.variance, 0.0);
    }

    #[test]
    fn long_horizon_reaches_the_stationary_law() {
        let spec = spec_1d(5.0, 0.15, 1.0);
        let m = analytic_moments(&v(&[-2.0]), &spec, 400.0).unwrap();
        assert!((m.mean.values()[0] - 5.0).abs() < 1e-12);
        assert!((m.variance - stationary_variance(&spec)).abs() < 1e-12);
        assert!((stationary_variance(&spec) - 1.0 / 0.3).abs() < 1e-15);
    }

    #[test]
    fn variance_at_t5_default_parameters() {
        // (1 − e^{−2·0.15·5}) / (2·0.15), evaluated independently
        let spec = spec_1d(0.0, 0.15, 1.0);
        let m = analytic_moments(&v(&[1.0]), &spec, 5.0).unwrap();
        let direct = (1.0 - (-1.5f64).exp()) / 0.3;
        assert_eq!(m.variance.to_bits(), direct.to_bits());
        assert!((m.variance - 2.5895661328385673).abs() < 1e-15);
    }

    #[test]
    fn mean_interpolates_between_start_and_target() {
        let spec = spec_1d(2.0, 0.5, 0.7);
        let c = v(&[-4.0]);
        for t in [0.1, 1.0, 3.0, 10.0] {
            let m = analytic_moments(&c, &spec, t).unwrap();
            let decay = (-0.5f64 * t).exp();
            let expect = -4.0 * decay + (1.0 - decay) * 2.0;
            assert!((m.mean.values()[0] - expect).abs() < 1e-15);
            assert!(m.mean.values()[0] > -4.0 && m.mean.values()[0] < 2.0);
        }
    }

    #[test]
    fn negative_time_rejected() {
        let spec = spec_1d(0.0, 0.15, 1.0);
        assert!(analytic_moments(&v(&[0.0]), &spec, -1.0).is_err());
    }
}
