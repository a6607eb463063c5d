//! The statistics-vector fingerprint: per element set and per (t, p) grid
//! cell, nine numbers summarising the persistent Laplacian spectrum —
//! the zero-eigenvalue count followed by sum, mean, median, max, min,
//! standard deviation, variance and sum of squares of the nonzero part.

use molgraph::{Element, LabeledPointCloud};

use crate::complex::{build_filtration, ElementFilter, RadiusGrid};
use crate::error::{Error, Result};
use crate::laplacian::{betti, persistent_laplacian, spectrum, ZERO_EIGENVALUE_EPS};

/// Number of statistics per (element set, t, p, q) cell.
pub const STATS_PER_CELL: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub struct FingerprintConfig {
    pub element_sets: Vec<ElementFilter>,
    pub grid: RadiusGrid,
    /// Laplacian orders to include; the default feature set uses q=0 only.
    pub orders: Vec<usize>,
}

impl Default for FingerprintConfig {
    fn default() -> Self {
        use Element::{C, N, O};
        FingerprintConfig {
            element_sets: vec![
                ElementFilter::Elements(vec![C]),
                ElementFilter::Elements(vec![N]),
                ElementFilter::Elements(vec![O]),
                ElementFilter::Elements(vec![C, N]),
                ElementFilter::Elements(vec![C, O]),
                ElementFilter::Elements(vec![N, O]),
                ElementFilter::AllHeavy,
            ],
            grid: RadiusGrid::default(),
            orders: vec![0],
        }
    }
}

impl FingerprintConfig {
    /// Total feature count for this configuration.
    pub fn len(&self) -> usize {
        self.element_sets.len()
            * self.grid.t_values.len()
            * self.grid.p_values.len()
            * self.orders.len()
            * STATS_PER_CELL
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Human-readable layout string identifying the feature ordering.
    pub fn layout(&self) -> String {
        let fmt = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let sets = self
            .element_sets
            .iter()
            .map(|s| s.label())
            .collect::<Vec<_>>()
            .join(";");
        let orders = self
            .orders
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "tlfp-v1|sets={sets}|t={}|p={}|q={orders}|stats=betti,sum,mean,median,max,min,std,var,sumsq",
            fmt(&self.grid.t_values),
            fmt(&self.grid.p_values),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TLFingerprint {
    /// Flat feature vector; layout: element set → q → t → p → 9 stats.
    pub values: Vec<f64>,
    /// One flag per cell: false when the cell had no spectrum to summarise
    /// (element selection empty, or no simplices of the requested order).
    pub populated: Vec<bool>,
    pub layout: String,
}

/// Nine-statistic block for one spectrum. The first entry is the count of
/// (near-)zero eigenvalues; the rest summarise the strictly nonzero ones.
fn stats_block(eigenvalues: &[f64]) -> [f64; STATS_PER_CELL] {
    let zero_count = betti(eigenvalues);
    let nonzero = &eigenvalues[zero_count.min(eigenvalues.len())..];
    let mut block = [0.0; STATS_PER_CELL];
    block[0] = zero_count as f64;
    if nonzero.is_empty() {
        return block;
    }
    let n = nonzero.len() as f64;
    let sum: f64 = nonzero.iter().sum();
    let mean = sum / n;
    let median = if nonzero.len() % 2 == 1 {
        nonzero[nonzero.len() / 2]
    } else {
        (nonzero[nonzero.len() / 2 - 1] + nonzero[nonzero.len() / 2]) / 2.0
    };
    let max = nonzero[nonzero.len() - 1];
    let min = nonzero[0];
    let variance = nonzero.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let sumsq = nonzero.iter().map(|x| x * x).sum::<f64>();
    block[1] = sum;
    block[2] = mean;
    block[3] = median;
    block[4] = max;
    block[5] = min;
    block[6] = variance.sqrt();
    block[7] = variance;
    block[8] = sumsq;
    block
}

/// Compute the fingerprint of a labeled cloud under `config`.
///
/// An element set that selects no atoms contributes all-zero blocks with
/// `populated = false` rather than failing the whole fingerprint; an empty
/// cloud is an error.
pub fn tl_fingerprint(cloud: &LabeledPointCloud, config: &FingerprintConfig) -> Result<TLFingerprint> {
    if cloud.is_empty() {
        return Err(Error::EmptySelection);
    }
    config.grid.validate()?;
    let cells_per_set =
        config.orders.len() * config.grid.t_values.len() * config.grid.p_values.len();
    let mut values = Vec::with_capacity(config.len());
    let mut populated = Vec::with_capacity(cells_per_set * config.element_sets.len());
    for set in &config.element_sets {
        let complex = match build_filtration(cloud, set, &config.grid) {
            Ok(c) => Some(c),
            Err(Error::EmptySelection) => None,
            Err(other) => return Err(other),
        };
        for &q in &config.orders {
            for &t in &config.grid.t_values {
                for &p in &config.grid.p_values {
                    match &complex {
                        Some(c) => {
                            let l = persistent_laplacian(c, q, t, p)?;
                            let eigenvalues = spectrum(&l)?;
                            values.extend_from_slice(&stats_block(&eigenvalues));
                            populated.push(!eigenvalues.is_empty());
                        }
                        None => {
                            values.extend_from_slice(&[0.0; STATS_PER_CELL]);
                            populated.push(false);
                        }
                    }
                }
            }
        }
    }
    Ok(TLFingerprint {
        values,
        populated,
        layout: config.layout(),
    })
}

/// Zero threshold actually applied inside the statistics split, exposed so
/// callers can reason about which eigenvalues count as harmonic.
pub fn zero_threshold(max_eigenvalue: f64) -> f64 {
    ZERO_EIGENVALUE_EPS * max_eigenvalue.max(1.0)
}
