//! Transition steppers for the mean-reverting diffusion.
//!
//! The exact stepper samples the transition law of the linear SDE directly
//! and is unconditionally stable; the explicit Euler–Maruyama stepper exists
//! to validate it (and must respect alpha·dt < 1).

use embedding::LatentVector;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::spec::{drift_target, DriftSpec};

/// Precomputed drift data for repeated stepping.
#[derive(Debug, Clone)]
pub struct Sampler {
    alpha: f64,
    sigma: f64,
    target: LatentVector,
}

impl Sampler {
    pub fn new(spec: &DriftSpec) -> Result<Self> {
        Ok(Self {
            alpha: spec.alpha,
            sigma: spec.sigma,
            target: drift_target(spec)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.target.dim()
    }

    pub fn target(&self) -> &LatentVector {
        &self.target
    }

    fn check(&self, x: &LatentVector, dt: f64) -> Result<()> {
        if x.dim() != self.target.dim() {
            return Err(Error::DimensionMismatch {
                a: x.dim(),
                b: self.target.dim(),
            });
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::NonPositiveStep { dt });
        }
        Ok(())
    }

    /// Exact transition over `dt`:
    /// x' = m + e^{−α dt}(x − m) + σ·sqrt((1 − e^{−2α dt})/(2α))·z.
    ///
    /// With σ = 0 the step is deterministic and consumes no randomness.
    pub fn exact_step(&self, x: &LatentVector, dt: f64, rng: &mut impl Rng) -> Result<LatentVector> {
        self.check(x, dt)?;
        let decay = (-self.alpha * dt).exp();
        let noise_sd = if self.sigma == 0.0 {
            0.0
        } else {
            self.sigma * ((1.0 - (-2.0 * self.alpha * dt).exp()) / (2.0 * self.alpha)).sqrt()
        };
        let values = x
            .values()
            .iter()
            .zip(self.target.values())
            .map(|(&xi, &mi)| {
                let mut v = mi + decay * (xi - mi);
                if noise_sd > 0.0 {
                    let z: f64 = rng.sample(StandardNormal);
                    v += noise_sd * z;
                }
                v
            })
            .collect();
        Ok(LatentVector::new(values)?)
    }

    /// Explicit first-order step: x' = x + α dt (m − x) + σ·sqrt(dt)·z.
    pub fn euler_step(&self, x: &LatentVector, dt: f64, rng: &mut impl Rng) -> Result<LatentVector> {
        self.check(x, dt)?;
        let alpha_dt = self.alpha * dt;
        if alpha_dt >= 1.0 {
            return Err(Error::StepTooLarge { alpha_dt });
        }
        let noise_sd = if self.sigma == 0.0 { 0.0 } else { self.sigma * dt.sqrt() };
        let values = x
            .values()
            .iter()
            .zip(self.target.values())
            .map(|(&xi, &mi)| {
                let mut v = xi + alpha_dt * (mi - xi);
                if noise_sd > 0.0 {
                    let z: f64 = rng.sample(StandardNormal);
                    v += noise_sd * z;
                }
                v
            })
            .collect();
        Ok(LatentVector::new(values)?)
    }
}

/// One-shot exact transition step (see [`Sampler::exact_step`]).
pub fn ou_exact_step(
    x: &LatentVector,
    spec: &DriftSpec,
    dt: f64,
    rng: &mut impl Rng,
) -> Result<LatentVector> {
    Sampler::new(spec)?.exact_step(x, dt, rng)
}

/// One-shot explicit step (see [`Sampler::euler_step`]).
pub fn euler_maruyama_step(
    x: &LatentVector,
    spec: &DriftSpec,
    dt: f64,
    rng: &mut impl Rng,
) -> Result<LatentVector> {
    Sampler::new(spec)?.euler_step(x, dt, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

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

    fn rng() -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(7)
    }

    #[test]
    fn noise_free_exponential_decay() {
        let spec = spec_1d(0.0, 0.15, 0.0);
        let x1 = ou_exact_step(&v(&[1.0]), &spec, 10.0, &mut rng()).unwrap();
        assert!((x1.values()[0] - (-1.5f64).exp()).abs() < 1e-15);
        // frozen decimal for the same quantity
        assert!((x1.values()[0] - 0.22313016014842982).abs() < 1e-15);
    }

    #[test]
    fn tiny_step_is_continuous() {
        let spec = spec_1d(0.0, 0.15, 0.0);
        let x = v(&[1.0]);
        let x1 = ou_exact_step(&x, &spec, 1e-12, &mut rng()).unwrap();
        assert!((x1.values()[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn euler_single_step_identity_without_noise() {
        let spec = spec_1d(2.0, 0.3, 0.0);
        let x = v(&[-1.0]);
        let dt = 0.25;
        let x1 = euler_maruyama_step(&x, &spec, dt, &mut rng()).unwrap();
        let expected = -1.0 + 0.3 * dt * (2.0 - (-1.0));
        assert_eq!(x1.values()[0], expected);
    }

    #[test]
    fn euler_rejects_unstable_steps() {
        let spec = spec_1d(0.0, 0.15, 1.0);
        let err = euler_maruyama_step(&v(&[1.0]), &spec, 7.0, &mut rng()).unwrap_err();
        assert!(matches!(err, Error::StepTooLarge { alpha_dt } if (alpha_dt - 1.05).abs() < 1e-12));
        // boundary: alpha*dt exactly 1 is rejected too
        let err = euler_maruyama_step(&v(&[1.0]), &spec, 1.0 / 0.15, &mut rng()).unwrap_err();
        assert!(matches!(err, Error::StepTooLarge { .. }));
    }

    #[test]
    fn euler_mean_matches_exact_to_second_order() {
        // local truncation: |euler − exact| per step shrinks ~4x per halving
        let spec = spec_1d(0.0, 0.6, 0.0);
        let x = v(&[1.0]);
        let err_at = |dt: f64| {
            let e = euler_maruyama_step(&x, &spec, dt, &mut rng()).unwrap().values()[0];
            let o = ou_exact_step(&x, &spec, dt, &mut rng()).unwrap().values()[0];
            (e - o).abs()
        };
        let (e1, e2, e3) = (err_at(0.1), err_at(0.05), err_at(0.025));
        assert!(e1 / e2 > 3.5 && e1 / e2 < 4.5, "{}", e1 / e2);
        assert!(e2 / e3 > 3.5 && e2 / e3 < 4.5, "{}", e2 / e3);
    }

    #[test]
    fn noise_free_steps_contract_toward_target() {
        let spec = spec_1d(1.5, 0.4, 0.0);
        for x0 in [-3.0, 0.0, 1.4, 8.0] {
            let x = v(&[x0]);
            for dt in [0.1, 1.0, 2.4] {
                let xe = ou_exact_step(&x, &spec, dt, &mut rng()).unwrap();
                assert!((xe.values()[0] - 1.5).abs() < (x0 - 1.5).abs());
                let xm = euler_maruyama_step(&x, &spec, dt, &mut rng()).unwrap();
                assert!((xm.values()[0] - 1.5).abs() < (x0 - 1.5).abs());
            }
        }
    }

    #[test]
    fn sigma_zero_consumes_no_randomness() {
        let spec = spec_1d(0.0, 0.15, 0.0);
        let mut r1 = rng();
        let _ = ou_exact_step(&v(&[1.0]), &spec, 1.0, &mut r1).unwrap();
        let mut r2 = rng();
        let a: f64 = r1.sample(StandardNormal);
        let b: f64 = r2.sample(StandardNormal);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn invalid_steps_are_rejected() {
        let spec = spec_1d(0.0, 0.15, 1.0);
        assert!(matches!(
            ou_exact_step(&v(&[1.0]), &spec, 0.0, &mut rng()).unwrap_err(),
            Error::NonPositiveStep { .. }
        ));
        assert!(matches!(
            ou_exact_step(&v(&[1.0, 2.0]), &spec, 1.0, &mut rng()).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }
}
