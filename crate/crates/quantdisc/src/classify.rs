//! KNN and linear-SVM classifiers for measuring the downstream accuracy of
//! original versus quantized features.
//!
//! Everything here is deterministic: KNN breaks distance ties by training-row
//! index and vote ties by lower label; the SVM trains on a seeded sample
//! order.

use ndarray::{Array2, ArrayView1};
use rayon::prelude::*;

use crate::dataset::LabeledDataset;
use crate::error::Error;
use crate::rng::unit_rng;
use crate::Result;

/// Distance used by the KNN classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Euclidean,
    Cosine,
}

/// KNN configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnnConfig {
    pub k: usize,
    pub metric: Metric,
}

impl Default for KnnConfig {
    fn default() -> Self {
        Self {
            k: 5,
            metric: Metric::Euclidean,
        }
    }
}

/// KNN output: one label per test row, plus the number of zero-norm vectors
/// encountered under the cosine metric.
#[derive(Debug, Clone)]
pub struct KnnPrediction {
    pub labels: Vec<u32>,
    pub zero_norm_count: usize,
}

fn squared_euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(&x, &y)| x * y).sum()
}

/// The k smallest (distance, index) pairs seen so far, ordered ascending.
/// Lexicographic order on (distance, index) realizes the tie-break rule.
struct KBest {
    entries: Vec<(f64, usize)>,
    k: usize,
}

impl KBest {
    fn new(k: usize) -> Self {
        Self {
            entries: Vec::with_capacity(k),
            k,
        }
    }

    #[inline]
    fn offer(&mut self, dist: f64, idx: usize) {
        if self.entries.len() == self.k {
            let worst = self.entries[self.k - 1];
            if (dist, idx) >= worst {
                return;
            }
            self.entries.pop();
        }
        let pos = self
            .entries
            .partition_point(|&(d, i)| (d, i) < (dist, idx));
        self.entries.insert(pos, (dist, idx));
    }
}

/// Majority label among the k nearest training rows. Distance ties are
/// broken by lower training-row index, vote ties by lower label value.
/// Zero-norm vectors under the cosine metric sit at distance 1 from
/// everything and are tallied in `zero_norm_count`.
pub fn knn_predict(
    train: &LabeledDataset,
    test_features: &Array2<f64>,
    cfg: &KnnConfig,
) -> Result<KnnPrediction> {
    if cfg.k == 0 {
        return Err(Error::invalid("k", "must be >= 1"));
    }
    if test_features.ncols() != train.n_dims() {
        return Err(Error::LengthMismatch {
            left: test_features.ncols(),
            right: train.n_dims(),
        });
    }
    let k = cfg.k.min(train.n_samples());
    let dims = train.n_dims();

    let train_std = train.features().as_standard_layout();
    let test_std = test_features.as_standard_layout();
    let train_flat = train_std.as_slice().expect("standard layout");
    let test_flat = test_std.as_slice().expect("standard layout");

    let train_norms: Option<Vec<f64>> = match cfg.metric {
        Metric::Cosine => Some(
            train_flat
                .chunks_exact(dims)
                .map(|row| dot(row, row).sqrt())
                .collect(),
        ),
        Metric::Euclidean => None,
    };

    let rows: Vec<(u32, usize)> = test_flat
        .par_chunks_exact(dims)
        .map(|test_row| {
            let mut zero_norms = 0usize;
            let test_norm = match cfg.metric {
                Metric::Cosine => {
                    let nrm = dot(test_row, test_row).sqrt();
                    if nrm == 0.0 {
                        zero_norms += 1;
                    }
                    nrm
                }
                Metric::Euclidean => 0.0,
            };
            let mut best = KBest::new(k);
            for (i, train_row) in train_flat.chunks_exact(dims).enumerate() {
                let d = match cfg.metric {
                    Metric::Euclidean => squared_euclidean(test_row, train_row),
                    Metric::Cosine => {
                        let tn = train_norms.as_ref().expect("precomputed")[i];
                        if tn == 0.0 || test_norm == 0.0 {
                            1.0
                        } else {
                            1.0 - dot(test_row, train_row) / (tn * test_norm)
                        }
                    }
                };
                best.offer(d, i);
            }
            let mut votes: Vec<(u32, usize)> = Vec::new();
            for &(_, idx) in &best.entries {
                let label = train.labels()[idx];
                match votes.iter_mut().find(|(l, _)| *l == label) {
                    Some((_, count)) => *count += 1,
                    None => votes.push((label, 1)),
                }
            }
            // Highest count wins; the lower label wins ties.
            votes.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            (votes[0].0, zero_norms)
        })
        .collect();

    let mut zero_norm_count = rows.iter().map(|(_, z)| z).sum::<usize>();
    if cfg.metric == Metric::Cosine {
        zero_norm_count += train_norms
            .as_ref()
            .expect("precomputed")
            .iter()
            .filter(|&&n| n == 0.0)
            .count();
    }
    Ok(KnnPrediction {
        labels: rows.into_iter().map(|(l, _)| l).collect(),
        zero_norm_count,
    })
}

/// Linear SVM training configuration (primal subgradient descent on the
/// regularized hinge loss).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmConfig {
    /// Regularization strength lambda, > 0.
    pub regularization: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        Self {
            regularization: 1e-3,
            epochs: 50,
            seed: 0,
        }
    }
}

/// A trained linear decision rule between two labels.
#[derive(Debug, Clone)]
pub struct SvmModel {
    weights: Vec<f64>,
    bias: f64,
    label_neg: u32,
    label_pos: u32,
}

impl SvmModel {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }
}

/// Trains the linear SVM with Pegasos-style step sizes and seeded epoch
/// shuffling. The training set must contain exactly two classes.
pub fn svm_train(train: &LabeledDataset, cfg: &SvmConfig) -> Result<SvmModel> {
    if !(cfg.regularization > 0.0 && cfg.regularization.is_finite()) {
        return Err(Error::invalid("regularization", "must be > 0"));
    }
    if cfg.epochs == 0 {
        return Err(Error::invalid("epochs", "must be >= 1"));
    }
    let classes = train.class_labels();
    if classes.len() != 2 {
        return Err(Error::NotTwoClasses(classes.len()));
    }
    let (label_neg, label_pos) = (classes[0], classes[1]);
    let targets: Vec<f64> = train
        .labels()
        .iter()
        .map(|&l| if l == label_pos { 1.0 } else { -1.0 })
        .collect();

    let n = train.n_samples();
    let lambda = cfg.regularization;
    let mut weights = vec![0.0; train.n_dims()];
    let mut bias = 0.0;
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = unit_rng(cfg.seed, 0);
    let mut t = 0usize;

    for _ in 0..cfg.epochs {
        for i in (1..order.len()).rev() {
            let j = rand::Rng::random_range(&mut rng, 0..=i);
            order.swap(i, j);
        }
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let row = train.features().row(i);
            let y = targets[i];
            let margin = y * (dot_slice(&weights, row) + bias);
            let decay = 1.0 - eta * lambda;
            for w in weights.iter_mut() {
                *w *= decay;
            }
            if margin < 1.0 {
                for (w, &x) in weights.iter_mut().zip(row.iter()) {
                    *w += eta * y * x;
                }
                bias += eta * y;
            }
        }
    }

    Ok(SvmModel {
        weights,
        bias,
        label_neg,
        label_pos,
    })
}

fn dot_slice(w: &[f64], x: ArrayView1<'_, f64>) -> f64 {
    w.iter().zip(x.iter()).map(|(&a, &b)| a * b).sum()
}

/// Predicts labels from the sign of the affine score; a non-positive score
/// maps to the lower label.
pub fn svm_predict(model: &SvmModel, features: &Array2<f64>) -> Vec<u32> {
    features
        .rows()
        .into_iter()
        .map(|row| {
            if dot_slice(&model.weights, row) + model.bias > 0.0 {
                model.label_pos
            } else {
                model.label_neg
            }
        })
        .collect()
}

/// Fraction of exact label matches.
pub fn accuracy(predicted: &[u32], truth: &[u32]) -> Result<f64> {
    if predicted.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: predicted.len(),
            right: truth.len(),
        });
    }
    if predicted.is_empty() {
        return Err(Error::EmptyInput("accuracy"));
    }
    let hits = predicted
        .iter()
        .zip(truth)
        .filter(|(a, b)| a == b)
        .count();
    Ok(hits as f64 / predicted.len() as f64)
}
