//! Threshold-based binary/ternary quantization and the feature
//! discrimination of two-class Gaussian data.
//!
//! Quantizing features is usually judged by reconstruction error, yet coarse
//! binary or ternary codes sometimes classify *better* than the original
//! data. This crate quantifies when that happens for the symmetric two-class
//! Gaussian model N(+-mu, sigma^2) with mu^2 + sigma^2 = 1:
//!
//! - [`discrim`] evaluates the discrimination (inter-class over intra-class
//!   expected squared distance) of original and quantized data in closed
//!   form, the certificate conditions whose positivity is equivalent to an
//!   enhancement, and the matching empirical estimator;
//! - [`solver`] finds enhancing thresholds by Armijo gradient descent and
//!   provides the minimum-quantization-error baseline;
//! - [`synth`], [`classify`], and [`harness`] reproduce the validation
//!   protocol: seeded synthetic data, KNN / linear-SVM accuracy sweeps, and
//!   CSV/plot emission via the `quantdisc` CLI.

pub mod classify;
pub mod dataset;
pub mod discrim;
pub mod error;
pub mod gaussian;
pub mod harness;
pub mod quant;
pub mod rng;
pub mod solver;
pub mod synth;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub use classify::{accuracy, knn_predict, svm_predict, svm_train, KnnConfig, Metric, SvmConfig};
pub use dataset::LabeledDataset;
pub use discrim::{
    binary_condition, d_binary, d_original, d_ternary, discrimination_report,
    empirical_discrimination, ternary_condition, DiscriminationReport,
};
pub use gaussian::{
    standardize_dataset, standardize_params, std_normal_cdf, std_normal_pdf, ClassPairModel,
    RawClassParams,
};
pub use quant::{
    quantization_error, quantize_scalar, quantize_vector, QuantKind, QuantScheme,
};
pub use solver::{
    binary_gradient, binary_objective, solve_mqe_threshold, solve_threshold, ternary_gradient,
    ternary_objective, SolverConfig, SolverResult,
};
pub use synth::{generate, split, SynthSpec};
