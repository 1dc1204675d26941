//! Seeded generation of synthetic two-class Gaussian datasets with
//! exponentially decaying mean magnitudes.
//!
//! Dimension i (0-based) has mean magnitude mu1 * exp(-lambda * i) and
//! variance 1 - mean^2, so every dimension satisfies the standardized-model
//! relation by construction. Class 0 rows take the positive means, class 1
//! the negative ones. Each dimension draws from its own RNG substream, so
//! generation parallelizes without changing the output.

use ndarray::Array2;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::dataset::LabeledDataset;
use crate::error::Error;
use crate::rng::unit_rng;
use crate::Result;

/// Substream index for the per-dimension sign draw (kept clear of the
/// dimension indices).
const SIGN_STREAM: u64 = u64::MAX;

/// Substream index for interleaving training rows across classes.
const INTERLEAVE_STREAM: u64 = u64::MAX - 1;

/// Parameters of one synthetic dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub dims: usize,
    /// Exponential decay rate of the mean magnitudes, >= 0.
    pub lambda: f64,
    /// First-dimension mean magnitude, in (0, 1).
    pub mu1: f64,
    pub samples_per_class: usize,
    pub seed: u64,
    /// When set, each dimension's mean sign is flipped with probability 1/2
    /// (a robustness option; the quantizer is symmetric so results should
    /// not depend on it).
    pub random_signs: bool,
}

impl SynthSpec {
    pub fn new(
        dims: usize,
        lambda: f64,
        mu1: f64,
        samples_per_class: usize,
        seed: u64,
    ) -> Result<Self> {
        if dims == 0 {
            return Err(Error::invalid("dims", "must be >= 1"));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::invalid("lambda", format!("must be >= 0, got {lambda}")));
        }
        if !(0.0 < mu1 && mu1 < 1.0) {
            return Err(Error::invalid("mu1", format!("must lie in (0, 1), got {mu1}")));
        }
        if samples_per_class == 0 {
            return Err(Error::invalid("samples_per_class", "must be >= 1"));
        }
        Ok(Self {
            dims,
            lambda,
            mu1,
            samples_per_class,
            seed,
            random_signs: false,
        })
    }

    pub fn with_random_signs(mut self, random_signs: bool) -> Self {
        self.random_signs = random_signs;
        self
    }
}

/// Mean magnitude of each dimension: mu1 * exp(-lambda * i).
pub fn dimension_means(spec: &SynthSpec) -> Vec<f64> {
    (0..spec.dims)
        .map(|i| spec.mu1 * (-spec.lambda * i as f64).exp())
        .collect()
}

/// Generates the dataset described by `spec`. Deterministic given the seed,
/// independent of thread count.
pub fn generate(spec: &SynthSpec) -> LabeledDataset {
    let n = spec.samples_per_class;
    let means = dimension_means(spec);
    let signs: Vec<f64> = if spec.random_signs {
        let mut rng = unit_rng(spec.seed, SIGN_STREAM);
        (0..spec.dims)
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect()
    } else {
        vec![1.0; spec.dims]
    };

    let columns: Vec<Vec<f64>> = (0..spec.dims)
        .into_par_iter()
        .map(|j| {
            let mu = means[j];
            let sigma = (1.0 - mu * mu).sqrt();
            let sign = signs[j];
            let mut rng = unit_rng(spec.seed, j as u64);
            let mut col = Vec::with_capacity(2 * n);
            for _ in 0..n {
                let z: f64 = StandardNormal.sample(&mut rng);
                col.push(sign * (mu + sigma * z));
            }
            for _ in 0..n {
                let z: f64 = StandardNormal.sample(&mut rng);
                col.push(sign * (-mu + sigma * z));
            }
            col
        })
        .collect();

    let mut features = Array2::zeros((2 * n, spec.dims));
    for (j, col) in columns.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            features[[i, j]] = x;
        }
    }
    let mut labels = vec![0u32; n];
    labels.extend(std::iter::repeat_n(1u32, n));
    LabeledDataset::new(features, labels).expect("generated data is finite and consistent")
}

/// Stratified train/test split. Per class, the training size is the class
/// count times `train_fraction`, rounded half-up and clamped so both parts
/// stay nonempty. Training rows are interleaved across classes by a seeded
/// shuffle so that index-based tie-breaking in KNN does not systematically
/// favor the first class; test rows follow the input order.
pub fn split(
    data: &LabeledDataset,
    train_fraction: f64,
    seed: u64,
) -> Result<(LabeledDataset, LabeledDataset)> {
    if !(0.0 < train_fraction && train_fraction < 1.0) {
        return Err(Error::invalid(
            "train_fraction",
            format!("must lie in (0, 1), got {train_fraction}"),
        ));
    }
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for (class_pos, label) in data.class_labels().into_iter().enumerate() {
        let mut rows = data.rows_with_label(label);
        if rows.len() < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                got: rows.len(),
            });
        }
        let n = rows.len();
        let n_train = ((n as f64 * train_fraction + 0.5).floor() as usize).clamp(1, n - 1);
        let mut rng = unit_rng(seed, class_pos as u64);
        shuffle(&mut rows, &mut rng);
        train_idx.extend_from_slice(&rows[..n_train]);
        test_idx.extend_from_slice(&rows[n_train..]);
    }
    let mut rng = unit_rng(seed, INTERLEAVE_STREAM);
    shuffle(&mut train_idx, &mut rng);
    test_idx.sort_unstable();
    Ok((
        data.select_rows(&train_idx)?,
        data.select_rows(&test_idx)?,
    ))
}

/// Fisher-Yates shuffle driven by the given generator.
fn shuffle<T>(items: &mut [T], rng: &mut impl Rng) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dimension_means_decay() {
        let spec = SynthSpec::new(3, 1.0, 0.8, 10, 0).unwrap();
        let means = dimension_means(&spec);
        assert_abs_diff_eq!(means[0], 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(means[1], 0.8 * (-1.0f64).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(means[2], 0.8 * (-2.0f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn lambda_zero_keeps_dimensions_identically_distributed() {
        let spec = SynthSpec::new(5, 0.0, 0.8, 10, 0).unwrap();
        assert!(dimension_means(&spec).iter().all(|&m| m == 0.8));
    }

    #[test]
    fn class_means_approach_plus_minus_mu() {
        // Law-of-large-numbers check at a desk-scale sample count.
        let spec = SynthSpec::new(1, 0.0, 0.8, 100_000, 7).unwrap();
        let data = generate(&spec);
        let n = spec.samples_per_class;
        let col = data.features().column(0);
        let mean0: f64 = col.iter().take(n).sum::<f64>() / n as f64;
        let mean1: f64 = col.iter().skip(n).sum::<f64>() / n as f64;
        let tol = 3.0 * 0.6 / (n as f64).sqrt();
        assert_abs_diff_eq!(mean0, 0.8, epsilon = tol);
        assert_abs_diff_eq!(mean1, -0.8, epsilon = tol);
    }

    #[test]
    fn pooled_variance_is_near_one_per_dimension() {
        let spec = SynthSpec::new(4, 1.0, 0.8, 20_000, 3).unwrap();
        let data = generate(&spec);
        let n = data.n_samples() as f64;
        for col in data.features().columns() {
            let mean = col.sum() / n;
            let var = col.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / n;
            assert_abs_diff_eq!(var, 1.0, epsilon = 5.0 * (2.0 / n).sqrt());
        }
    }

    #[test]
    fn generation_is_bit_reproducible() {
        let spec = SynthSpec::new(7, 0.3, 0.7, 50, 99).unwrap();
        assert_eq!(generate(&spec), generate(&spec));
    }

    #[test]
    fn class_counts_are_exact() {
        let spec = SynthSpec::new(2, 0.1, 0.5, 123, 5).unwrap();
        let data = generate(&spec);
        let ones = data.labels().iter().filter(|&&l| l == 1).count();
        assert_eq!(ones, 123);
        assert_eq!(data.n_samples(), 246);
    }

    #[test]
    fn split_matches_four_to_one_protocol() {
        let spec = SynthSpec::new(1, 0.0, 0.8, 1000, 1).unwrap();
        let data = generate(&spec);
        let (train, test) = split(&data, 0.8, 42).unwrap();
        assert_eq!(train.n_samples(), 1600);
        assert_eq!(test.n_samples(), 400);
        for part in [&train, &test] {
            let zeros = part.labels().iter().filter(|&&l| l == 0).count();
            assert_eq!(zeros * 2, part.n_samples());
        }
    }

    #[test]
    fn split_tiny_dataset() {
        let spec = SynthSpec::new(1, 0.0, 0.8, 2, 1).unwrap();
        let data = generate(&spec);
        let (train, test) = split(&data, 0.5, 0).unwrap();
        assert_eq!(train.n_samples(), 2);
        assert_eq!(test.n_samples(), 2);
    }

    #[test]
    fn split_is_deterministic() {
        let spec = SynthSpec::new(3, 0.5, 0.6, 40, 2).unwrap();
        let data = generate(&spec);
        let (a_train, a_test) = split(&data, 0.8, 5).unwrap();
        let (b_train, b_test) = split(&data, 0.8, 5).unwrap();
        assert_eq!(a_train, b_train);
        assert_eq!(a_test, b_test);
        let (c_train, _) = split(&data, 0.8, 6).unwrap();
        assert_ne!(a_train, c_train);
    }
}
