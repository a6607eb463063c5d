//! Gradient-boosted regression trees: squared-error boosting from the label
//! mean, exact greedy splits with midpoint thresholds, and seeded
//! row subsampling per stage.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbdtParams {
    pub trees: usize,
    pub depth: usize,
    pub learning_rate: f64,
    /// Fraction of rows drawn (without replacement) for each stage.
    pub subsample: f64,
    pub seed: u64,
}

impl Default for GbdtParams {
    fn default() -> GbdtParams {
        GbdtParams {
            trees: 500,
            depth: 6,
            learning_rate: 0.05,
            subsample: 0.8,
            seed: 0,
        }
    }
}

impl GbdtParams {
    fn validate(&self) -> Result<()> {
        if self.trees == 0 {
            return Err(Error::InvalidParams {
                detail: "trees must be >= 1".into(),
            });
        }
        if self.depth == 0 {
            return Err(Error::InvalidParams {
                detail: "depth must be >= 1".into(),
            });
        }
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return Err(Error::InvalidParams {
                detail: format!("learning_rate must be in (0, 1], got {}", self.learning_rate),
            });
        }
        if !(self.subsample > 0.0 && self.subsample <= 1.0) {
            return Err(Error::InvalidParams {
                detail: format!("subsample must be in (0, 1], got {}", self.subsample),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Node {
    Split {
        feature: usize,
        /// Rows with `x[feature] <= threshold` go left.
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    nodes: Vec<Node>,
}

impl Tree {
    fn predict(&self, row: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf { value } => return value,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if row[feature] <= threshold { left } else { right };
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbdtModel {
    pub params: GbdtParams,
    n_features: usize,
    base: f64,
    trees: Vec<Tree>,
    /// Training MSE after each boosting stage.
    pub training_loss: Vec<f64>,
    pub warnings: Vec<String>,
}

impl GbdtModel {
    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn predict(&self, row: &[f64]) -> Result<f64> {
        if row.len() != self.n_features {
            return Err(Error::DimensionMismatch {
                expected: self.n_features,
                got: row.len(),
            });
        }
        let mut value = self.base;
        for tree in &self.trees {
            value += self.params.learning_rate * tree.predict(row);
        }
        Ok(value)
    }

    pub fn predict_batch(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>> {
        rows.iter().map(|r| self.predict(r)).collect()
    }
}

/// Fit a boosted ensemble on `x` (rows of features) against `y`.
pub fn fit_gbdt(x: &[Vec<f64>], y: &[f64], params: &GbdtParams) -> Result<GbdtModel> {
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

    // Column-major copy plus one global argsort per feature, reused by every
    // stage (stage-level lists are order-preserving filters of these).
    let mut cols: Vec<Vec<f64>> = vec![Vec::with_capacity(n); d];
    for row in x {
        for (f, &v) in row.iter().enumerate() {
            cols[f].push(v);
        }
    }
    let argsort: Vec<Vec<u32>> = cols
        .iter()
        .map(|col| {
            let mut idx: Vec<u32> = (0..n as u32).collect();
            idx.sort_unstable_by(|&a, &b| {
                col[a as usize]
                    .total_cmp(&col[b as usize])
                    .then(a.cmp(&b))
            });
            idx
        })
        .collect();

    let mut warnings = Vec::new();
    let degenerate = d == 0
        || cols
            .iter()
            .all(|col| col.iter().all(|&v| v == col[0]));
    if degenerate {
        let msg = "all descriptor columns are constant; model reduces to the label mean".to_string();
        eprintln!("warning: {msg}");
        warnings.push(msg);
    }

    let base = y.iter().sum::<f64>() / n as f64;
    let mut current: Vec<f64> = vec![base; n];
    let mut rng = ChaCha12Rng::seed_from_u64(params.seed);
    let sample_size = if params.subsample < 1.0 {
        ((params.subsample * n as f64).floor() as usize).max(1)
    } else {
        n
    };

    let mut trees = Vec::with_capacity(params.trees);
    let mut training_loss = Vec::with_capacity(params.trees);
    let mut side = vec![false; n];
    for stage in 0..params.trees {
        let residuals: Vec<f64> = (0..n).map(|i| y[i] - current[i]).collect();

        let sorted: Vec<Vec<u32>> = if sample_size < n {
            let mut idx: Vec<u32> = (0..n as u32).collect();
            for k in 0..sample_size {
                let j = rng.gen_range(k..n);
                idx.swap(k, j);
            }
            let mut in_sample = vec![false; n];
            for &i in &idx[..sample_size] {
                in_sample[i as usize] = true;
            }
            argsort
                .iter()
                .map(|ord| {
                    ord.iter()
                        .copied()
                        .filter(|&i| in_sample[i as usize])
                        .collect()
                })
                .collect()
        } else {
            argsort.clone()
        };

        let mut nodes = Vec::new();
        grow(&mut nodes, &cols, &residuals, sorted, 0, params.depth, &mut side);
        let tree = Tree { nodes };
        for i in 0..n {
            current[i] += params.learning_rate * tree.predict(&x[i]);
        }
        trees.push(tree);

        let mse = (0..n).map(|i| (y[i] - current[i]).powi(2)).sum::<f64>() / n as f64;
        if !mse.is_finite() {
            return Err(Error::NonFiniteLoss {
                epoch: stage,
                loss: mse,
            });
        }
        training_loss.push(mse);
    }

    Ok(GbdtModel {
        params: params.clone(),
        n_features: d,
        base,
        trees,
        training_loss,
        warnings,
    })
}

/// Grow one node (and its subtree) from per-feature sorted row lists;
/// returns the node's index. `sorted[f]` holds this node's rows ordered by
/// feature `f`; every list holds the same row set.
fn grow(
    nodes: &mut Vec<Node>,
    cols: &[Vec<f64>],
    residuals: &[f64],
    sorted: Vec<Vec<u32>>,
    depth: usize,
    max_depth: usize,
    side: &mut [bool],
) -> usize {
    let rows: &[u32] = sorted.first().map(Vec::as_slice).unwrap_or(&[]);
    let n = rows.len();
    let total: f64 = rows.iter().map(|&i| residuals[i as usize]).sum();
    let mean = if n == 0 { 0.0 } else { total / n as f64 };
    if depth >= max_depth || n < 2 {
        nodes.push(Node::Leaf { value: mean });
        return nodes.len() - 1;
    }

    // Exact greedy scan: every boundary between adjacent distinct feature
    // values is a candidate; variance reduction via prefix sums.
    let mut best_gain = 0.0;
    let mut best: Option<(usize, usize)> = None; // (feature, last left position)
    let base_score = total * total / n as f64;
    for (f, ord) in sorted.iter().enumerate() {
        let col = &cols[f];
        let mut left_sum = 0.0;
        for pos in 0..n - 1 {
            left_sum += residuals[ord[pos] as usize];
            let a = col[ord[pos] as usize];
            let b = col[ord[pos + 1] as usize];
            if a == b {
                continue;
            }
            let left_count = (pos + 1) as f64;
            let right_count = (n - pos - 1) as f64;
            let right_sum = total - left_sum;
            let gain =
                left_sum * left_sum / left_count + right_sum * right_sum / right_count - base_score;
            if gain > best_gain {
                best_gain = gain;
                best = Some((f, pos));
            }
        }
    }

    let Some((feature, pos)) = best else {
        nodes.push(Node::Leaf { value: mean });
        return nodes.len() - 1;
    };

    let a = cols[feature][sorted[feature][pos] as usize];
    let b = cols[feature][sorted[feature][pos + 1] as usize];
    let mut threshold = a + (b - a) / 2.0;
    // The midpoint may round onto `b`; pin it back so `<=` keeps `a` left.
    if threshold >= b {
        threshold = a;
    }

    for &i in rows {
        side[i as usize] = cols[feature][i as usize] <= threshold;
    }
    let mut left_lists = Vec::with_capacity(sorted.len());
    let mut right_lists = Vec::with_capacity(sorted.len());
    for ord in &sorted {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for &i in ord {
            if side[i as usize] {
                l.push(i);
            } else {
                r.push(i);
            }
        }
        left_lists.push(l);
        right_lists.push(r);
    }
    drop(sorted);

    let here = nodes.len();
    nodes.push(Node::Leaf { value: mean }); // placeholder, patched below
    let left = grow(nodes, cols, residuals, left_lists, depth + 1, max_depth, side);
    let right = grow(nodes, cols, residuals, right_lists, depth + 1, max_depth, side);
    nodes[here] = Node::Split {
        feature,
        threshold,
        left,
        right,
    };
    here
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_xy() -> (Vec<Vec<f64>>, Vec<f64>) {
        // y depends on x0 with a step and mild slope on x1
        let x: Vec<Vec<f64>> = (0..40)
            .map(|i| {
                let a = i as f64 / 10.0;
                let b = ((i * 7) % 13) as f64;
                vec![a, b]
            })
            .collect();
        let y: Vec<f64> = x
            .iter()
            .map(|r| if r[0] < 2.0 { 1.0 + 0.1 * r[1] } else { 5.0 + 0.1 * r[1] })
            .collect();
        (x, y)
    }

    fn small_params() -> GbdtParams {
        GbdtParams {
            trees: 40,
            depth: 3,
            learning_rate: 0.3,
            subsample: 1.0,
            seed: 11,
        }
    }

    #[test]
    fn training_loss_never_increases_without_subsampling() {
        let (x, y) = toy_xy();
        let model = fit_gbdt(&x, &y, &small_params()).unwrap();
        for pair in model.training_loss.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-12,
                "loss increased: {} -> {}",
                pair[0],
                pair[1]
            );
        }
        assert!(*model.training_loss.last().unwrap() < 0.05);
    }

    #[test]
    fn refit_is_bitwise_deterministic() {
        let (x, y) = toy_xy();
        let mut params = small_params();
        params.subsample = 0.7;
        let a = fit_gbdt(&x, &y, &params).unwrap();
        let b = fit_gbdt(&x, &y, &params).unwrap();
        assert_eq!(a, b);
        let pa = a.predict_batch(&x).unwrap();
        let pb = b.predict_batch(&x).unwrap();
        assert_eq!(pa, pb);
    }

    #[test]
    fn stump_matches_exhaustive_split_search() {
        // depth-1 tree vs brute force over every (feature, boundary) pair
        let x: Vec<Vec<f64>> = vec![
            vec![0.1, 9.0],
            vec![0.4, 3.0],
            vec![0.9, 7.0],
            vec![1.3, 1.0],
            vec![2.0, 4.0],
            vec![2.2, 8.0],
            vec![3.1, 2.0],
            vec![3.5, 6.0],
            vec![4.0, 0.0],
            vec![4.4, 5.0],
        ];
        let y = vec![0.2, 0.1, 0.4, 0.3, 2.9, 3.2, 3.0, 3.4, 2.8, 3.1];
        let params = GbdtParams {
            trees: 1,
            depth: 1,
            learning_rate: 1.0,
            subsample: 1.0,
            seed: 0,
        };
        let model = fit_gbdt(&x, &y, &params).unwrap();
        let predictions = model.predict_batch(&x).unwrap();
        let sse_model: f64 = predictions
            .iter()
            .zip(&y)
            .map(|(p, t)| (t - p) * (t - p))
            .sum();

        let mut sse_best = f64::INFINITY;
        for f in 0..2 {
            let mut values: Vec<f64> = x.iter().map(|r| r[f]).collect();
            values.sort_by(f64::total_cmp);
            for w in values.windows(2) {
                if w[0] == w[1] {
                    continue;
                }
                let cut = (w[0] + w[1]) / 2.0;
                let (mut ls, mut lc, mut rs, mut rc) = (0.0, 0.0, 0.0, 0.0);
                for (row, &t) in x.iter().zip(&y) {
                    if row[f] <= cut {
                        ls += t;
                        lc += 1.0;
                    } else {
                        rs += t;
                        rc += 1.0;
                    }
                }
                let (lm, rm) = (ls / lc, rs / rc);
                let sse: f64 = x
                    .iter()
                    .zip(&y)
                    .map(|(row, &t)| {
                        let m = if row[f] <= cut { lm } else { rm };
                        (t - m) * (t - m)
                    })
                    .sum();
                sse_best = sse_best.min(sse);
            }
        }
        assert!(
            (sse_model - sse_best).abs() < 1e-9,
            "greedy stump SSE {sse_model} vs exhaustive best {sse_best}"
        );
    }

    #[test]
    fn predictions_invariant_under_monotone_feature_transform() {
        // Holds exactly when every stage sees all rows: predicted rows then
        // never fall strictly between a node's split neighbors, so routing
        // depends only on feature order, which the transform preserves.
        let (x, y) = toy_xy();
        let mut params = small_params();
        params.subsample = 1.0;
        params.seed = 3;
        let warped: Vec<Vec<f64>> = x
            .iter()
            .map(|r| vec![r[0].powi(3), (r[1] * 0.5).exp()])
            .collect();
        let plain = fit_gbdt(&x, &y, &params).unwrap();
        let transformed = fit_gbdt(&warped, &y, &params).unwrap();
        let pa = plain.predict_batch(&x).unwrap();
        let pb = transformed.predict_batch(&warped).unwrap();
        assert_eq!(pa, pb, "split structure must depend only on feature order");
    }

    #[test]
    fn constant_features_fall_back_to_mean_with_warning() {
        let x: Vec<Vec<f64>> = vec![vec![2.0, 5.0]; 8];
        let y: Vec<f64> = (0..8).map(|i| i as f64).collect();
        let model = fit_gbdt(&x, &y, &GbdtParams { trees: 5, ..small_params() }).unwrap();
        assert_eq!(model.warnings.len(), 1);
        let mean = y.iter().sum::<f64>() / 8.0;
        for p in model.predict_batch(&x).unwrap() {
            assert_eq!(p, mean);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let (x, y) = toy_xy();
        assert!(matches!(
            fit_gbdt(&[], &[], &small_params()),
            Err(Error::TooFewRows { .. })
        ));
        assert!(matches!(
            fit_gbdt(&x, &y[..5], &small_params()),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut bad = small_params();
        bad.subsample = 0.0;
        assert!(matches!(
            fit_gbdt(&x, &y, &bad),
            Err(Error::InvalidParams { .. })
        ));
        let mut nan_y = y.clone();
        nan_y[3] = f64::NAN;
        assert!(matches!(
            fit_gbdt(&x, &nan_y, &small_params()),
            Err(Error::InvalidParams { .. })
        ));
        let model = fit_gbdt(&x, &y, &small_params()).unwrap();
        assert!(matches!(
            model.predict(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn defaults_match_documented_values() {
        let p = GbdtParams::default();
        assert_eq!(p.trees, 500);
        assert_eq!(p.depth, 6);
        assert_eq!(p.learning_rate, 0.05);
        assert_eq!(p.subsample, 0.8);
    }
}
