//! Feed-forward network regressor: tanh hidden layers, linear output,
//! seeded Xavier initialization, mini-batch gradient descent on squared
//! error. Parameters can be flattened for finite-difference checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpParams {
    pub hidden: Vec<usize>,
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub seed: u64,
}

impl Default for MlpParams {
    fn default() -> MlpParams {
        MlpParams {
            hidden: vec![256, 256],
            epochs: 200,
            batch_size: 32,
            learning_rate: 0.01,
            seed: 0,
        }
    }
}

impl MlpParams {
    fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(Error::InvalidParams {
                detail: "batch_size must be >= 1".into(),
            });
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::InvalidParams {
                detail: format!("learning_rate must be > 0, got {}", self.learning_rate),
            });
        }
        if self.hidden.iter().any(|&h| h == 0) {
            return Err(Error::InvalidParams {
                detail: "hidden layer widths must be >= 1".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Layer {
    /// Row-major `out_dim x in_dim`.
    w: Vec<f64>,
    b: Vec<f64>,
    in_dim: usize,
    out_dim: usize,
}

impl Layer {
    fn apply(&self, input: &[f64], out: &mut Vec<f64>) {
        out.clear();
        for o in 0..self.out_dim {
            let row = &self.w[o * self.in_dim..(o + 1) * self.in_dim];
            let mut z = self.b[o];
            for (wi, xi) in row.iter().zip(input) {
                z += wi * xi;
            }
            out.push(z);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpModel {
    pub params: MlpParams,
    n_features: usize,
    layers: Vec<Layer>,
    /// Full-dataset MSE after each epoch.
    pub training_loss: Vec<f64>,
}

impl MlpModel {
    /// Freshly initialized network (no training): Xavier-uniform weights,
    /// zero biases, widths `n_features -> hidden... -> 1`.
    pub fn init(n_features: usize, params: &MlpParams) -> Result<MlpModel> {
        params.validate()?;
        if n_features == 0 {
            return Err(Error::InvalidParams {
                detail: "network needs at least one input feature".into(),
            });
        }
        let mut dims = vec![n_features];
        dims.extend_from_slice(&params.hidden);
        dims.push(1);
        let mut rng = ChaCha12Rng::seed_from_u64(params.seed);
        let layers = dims
            .windows(2)
            .map(|d| {
                let (fan_in, fan_out) = (d[0], d[1]);
                let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
                let w = (0..fan_in * fan_out)
                    .map(|_| rng.gen_range(-limit..limit))
                    .collect();
                Layer {
                    w,
                    b: vec![0.0; fan_out],
                    in_dim: fan_in,
                    out_dim: fan_out,
                }
            })
            .collect();
        Ok(MlpModel {
            params: params.clone(),
            n_features,
            layers,
            training_loss: Vec::new(),
        })
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    /// Activations per layer: `acts[0]` is the input, hidden outputs pass
    /// through tanh, the last layer stays linear.
    fn forward(&self, row: &[f64]) -> Vec<Vec<f64>> {
        let mut acts: Vec<Vec<f64>> = Vec::with_capacity(self.layers.len() + 1);
        acts.push(row.to_vec());
        let last = self.layers.len() - 1;
        for (l, layer) in self.layers.iter().enumerate() {
            let mut z = Vec::new();
            layer.apply(acts.last().unwrap(), &mut z);
            if l < last {
                for v in z.iter_mut() {
                    *v = v.tanh();
                }
            }
            acts.push(z);
        }
        acts
    }

    pub fn predict(&self, row: &[f64]) -> Result<f64> {
        if row.len() != self.n_features {
            return Err(Error::DimensionMismatch {
                expected: self.n_features,
                got: row.len(),
            });
        }
        Ok(self.forward(row).last().unwrap()[0])
    }

    pub fn predict_batch(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>> {
        rows.iter().map(|r| self.predict(r)).collect()
    }

    /// All weights and biases as one vector (layer by layer, weights first).
    pub fn flatten_params(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for layer in &self.layers {
            out.extend_from_slice(&layer.w);
            out.extend_from_slice(&layer.b);
        }
        out
    }

    /// Inverse of [`flatten_params`].
    pub fn set_flat_params(&mut self, flat: &[f64]) -> Result<()> {
        let expected: usize = self.layers.iter().map(|l| l.w.len() + l.b.len()).sum();
        if flat.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: flat.len(),
            });
        }
        let mut at = 0;
        for layer in &mut self.layers {
            let wn = layer.w.len();
            layer.w.copy_from_slice(&flat[at..at + wn]);
            at += wn;
            let bn = layer.b.len();
            layer.b.copy_from_slice(&flat[at..at + bn]);
            at += bn;
        }
        Ok(())
    }

    /// Mean squared error over a dataset.
    pub fn mse(&self, x: &[Vec<f64>], y: &[f64]) -> Result<f64> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::TooFewRows { rows: 0, needed: 1 });
        }
        let mut total = 0.0;
        for (row, &t) in x.iter().zip(y) {
            let p = self.predict(row)?;
            total += (p - t) * (p - t);
        }
        Ok(total / x.len() as f64)
    }

    /// Analytic gradient of [`mse`] with respect to the flattened
    /// parameters, in [`flatten_params`] order.
    pub fn mse_gradient(&self, x: &[Vec<f64>], y: &[f64]) -> Result<Vec<f64>> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::TooFewRows { rows: 0, needed: 1 });
        }
        let mut grads = self.zero_gradients();
        let scale = 2.0 / x.len() as f64;
        for (row, &t) in x.iter().zip(y) {
            if row.len() != self.n_features {
                return Err(Error::DimensionMismatch {
                    expected: self.n_features,
                    got: row.len(),
                });
            }
            self.accumulate_example(row, t, scale, &mut grads);
        }
        let mut flat = Vec::new();
        for (gw, gb) in &grads {
            flat.extend_from_slice(gw);
            flat.extend_from_slice(gb);
        }
        Ok(flat)
    }

    fn zero_gradients(&self) -> Vec<(Vec<f64>, Vec<f64>)> {
        self.layers
            .iter()
            .map(|l| (vec![0.0; l.w.len()], vec![0.0; l.b.len()]))
            .collect()
    }

    /// Backpropagate one example; `scale` carries the loss normalization
    /// (2/m for a mean-of-squares loss over m examples).
    fn accumulate_example(
        &self,
        row: &[f64],
        target: f64,
        scale: f64,
        grads: &mut [(Vec<f64>, Vec<f64>)],
    ) {
        let acts = self.forward(row);
        let prediction = acts.last().unwrap()[0];
        let mut delta = vec![scale * (prediction - target)];
        for l in (0..self.layers.len()).rev() {
            let layer = &self.layers[l];
            let input = &acts[l];
            let (gw, gb) = &mut grads[l];
            for o in 0..layer.out_dim {
                let d = delta[o];
                gb[o] += d;
                let grow = &mut gw[o * layer.in_dim..(o + 1) * layer.in_dim];
                for (g, xi) in grow.iter_mut().zip(input) {
                    *g += d * xi;
                }
            }
            if l == 0 {
                break;
            }
            // Propagate through the weights, then through tanh of layer l-1.
            let mut upstream = vec![0.0; layer.in_dim];
            for o in 0..layer.out_dim {
                let d = delta[o];
                let wrow = &layer.w[o * layer.in_dim..(o + 1) * layer.in_dim];
                for (u, wi) in upstream.iter_mut().zip(wrow) {
                    *u += d * wi;
                }
            }
            for (u, a) in upstream.iter_mut().zip(&acts[l]) {
                *u *= 1.0 - a * a;
            }
            delta = upstream;
        }
    }

    fn sgd_step(&mut self, grads: &[(Vec<f64>, Vec<f64>)], lr: f64) {
        for (layer, (gw, gb)) in self.layers.iter_mut().zip(grads) {
            for (w, g) in layer.w.iter_mut().zip(gw) {
                *w -= lr * g;
            }
            for (b, g) in layer.b.iter_mut().zip(gb) {
                *b -= lr * g;
            }
        }
    }
}

/// Train a network on `x`/`y` with seeded shuffling and mini-batch descent.
pub fn fit_mlp(x: &[Vec<f64>], y: &[f64], params: &MlpParams) -> Result<MlpModel> {
    params.validate()?;
    let n = x.len();
    if n == 0 {
        return Err(Error::TooFewRows { rows: 0, needed: 1 });
    }
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: y.len(),
        });
    }
    let d = x[0].len();
    for row in x {
        if row.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.len(),
            });
        }
    }
    if x.iter().flatten().any(|v| !v.is_finite()) || y.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParams {
            detail: "training data contains non-finite values".into(),
        });
    }

    let mut model = MlpModel::init(d, params)?;
    // One stream drives both init and epoch shuffles; keep drawing from it.
    let mut rng = ChaCha12Rng::seed_from_u64(params.seed.wrapping_add(1));
    let mut order: Vec<usize> = (0..n).collect();
    for epoch in 0..params.epochs {
        order.shuffle(&mut rng);
        for batch in order.chunks(params.batch_size) {
            let mut grads = model.zero_gradients();
            let scale = 2.0 / batch.len() as f64;
            for &i in batch {
                model.accumulate_example(&x[i], y[i], scale, &mut grads);
            }
            model.sgd_step(&grads, params.learning_rate);
        }
        let loss = model.mse(x, y)?;
        if !loss.is_finite() {
            return Err(Error::NonFiniteLoss { epoch, loss });
        }
        model.training_loss.push(loss);
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_data() -> (Vec<Vec<f64>>, Vec<f64>) {
        let x: Vec<Vec<f64>> = (0..64)
            .map(|i| vec![-1.0 + 2.0 * i as f64 / 63.0])
            .collect();
        let y: Vec<f64> = x.iter().map(|r| 2.0 * r[0] + 1.0).collect();
        (x, y)
    }

    #[test]
    fn untrained_network_predicts_finite_values() {
        let params = MlpParams {
            hidden: vec![5, 4],
            epochs: 0,
            ..MlpParams::default()
        };
        let (x, y) = line_data();
        let model = fit_mlp(&x, &y, &params).unwrap();
        assert!(model.training_loss.is_empty());
        for p in model.predict_batch(&x).unwrap() {
            assert!(p.is_finite());
        }
    }

    #[test]
    fn learns_a_line_to_under_tenth_rmse() {
        let (x, y) = line_data();
        // closed-form least squares on the same data is exact (noiseless)
        let n = x.len() as f64;
        let sx: f64 = x.iter().map(|r| r[0]).sum();
        let sy: f64 = y.iter().sum();
        let sxx: f64 = x.iter().map(|r| r[0] * r[0]).sum();
        let sxy: f64 = x.iter().zip(&y).map(|(r, t)| r[0] * t).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let intercept = (sy - slope * sx) / n;
        let lsq_rmse = (x
            .iter()
            .zip(&y)
            .map(|(r, t)| (slope * r[0] + intercept - t).powi(2))
            .sum::<f64>()
            / n)
            .sqrt();
        assert!(lsq_rmse < 1e-9);

        let params = MlpParams {
            hidden: vec![8],
            epochs: 1500,
            batch_size: 16,
            learning_rate: 0.05,
            seed: 4,
        };
        let model = fit_mlp(&x, &y, &params).unwrap();
        let rmse = model.mse(&x, &y).unwrap().sqrt();
        assert!(rmse < 0.1, "rmse {rmse}");
    }

    #[test]
    fn analytic_gradient_matches_central_differences() {
        let params = MlpParams {
            hidden: vec![4, 3],
            epochs: 0,
            batch_size: 8,
            learning_rate: 0.01,
            seed: 9,
        };
        let x: Vec<Vec<f64>> = vec![
            vec![0.3, -0.7],
            vec![-0.2, 0.5],
            vec![0.9, 0.1],
            vec![-0.6, -0.4],
        ];
        let y = vec![0.2, -0.3, 0.7, -0.1];
        let mut model = MlpModel::init(2, &params).unwrap();
        let analytic = model.mse_gradient(&x, &y).unwrap();
        let theta = model.flatten_params();
        let h = 1e-6;
        let mut worst = 0.0_f64;
        for k in 0..theta.len() {
            let mut plus = theta.clone();
            plus[k] += h;
            model.set_flat_params(&plus).unwrap();
            let lp = model.mse(&x, &y).unwrap();
            let mut minus = theta.clone();
            minus[k] -= h;
            model.set_flat_params(&minus).unwrap();
            let lm = model.mse(&x, &y).unwrap();
            let fd = (lp - lm) / (2.0 * h);
            let rel = (analytic[k] - fd).abs() / (analytic[k].abs() + fd.abs()).max(1e-6);
            worst = worst.max(rel);
        }
        assert!(worst < 1e-5, "max relative error {worst}");
    }

    #[test]
    fn training_is_deterministic() {
        let (x, y) = line_data();
        let params = MlpParams {
            hidden: vec![6],
            epochs: 50,
            batch_size: 8,
            learning_rate: 0.03,
            seed: 77,
        };
        let a = fit_mlp(&x, &y, &params).unwrap();
        let b = fit_mlp(&x, &y, &params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn divergence_is_reported_not_swallowed() {
        let (x, mut y) = line_data();
        for v in y.iter_mut() {
            *v *= 1e12;
        }
        let params = MlpParams {
            hidden: vec![4],
            epochs: 20,
            batch_size: 8,
            learning_rate: 1e18,
            seed: 0,
        };
        match fit_mlp(&x, &y, &params) {
            Err(Error::NonFiniteLoss { .. }) => {}
            other => panic!("expected NonFiniteLoss, got {other:?}"),
        }
    }

    #[test]
    fn flatten_round_trips_and_validates_length() {
        let params = MlpParams {
            hidden: vec![3],
            ..MlpParams::default()
        };
        let mut model = MlpModel::init(2, &params).unwrap();
        let flat = model.flatten_params();
        assert_eq!(flat.len(), 2 * 3 + 3 + 3 + 1);
        let mut bumped = flat.clone();
        bumped[0] += 1.0;
        model.set_flat_params(&bumped).unwrap();
        assert_eq!(model.flatten_params(), bumped);
        assert!(matches!(
            model.set_flat_params(&flat[1..]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_bad_params_and_shapes() {
        let (x, y) = line_data();
        let zero_batch = MlpParams {
            batch_size: 0,
            ..MlpParams::default()
        };
        assert!(matches!(
            fit_mlp(&x, &y, &zero_batch),
            Err(Error::InvalidParams { .. })
        ));
        let params = MlpParams {
            hidden: vec![3],
            epochs: 1,
            ..MlpParams::default()
        };
        assert!(matches!(
            fit_mlp(&x, &y[..4], &params),
            Err(Error::DimensionMismatch { .. })
        ));
        let model = fit_mlp(&x, &y, &params).unwrap();
        assert!(matches!(
            model.predict(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn defaults_match_documented_values() {
        let p = MlpParams::default();
        assert_eq!(p.hidden, vec![256, 256]);
        assert_eq!(p.epochs, 200);
    }
}
