//! Experiment harness behind the CLI: sweeps, Monte-Carlo validation,
//! classification experiments, solver runs, and plot-script emission.
//!
//! Every command returns its CSV as a string; all floating-point output goes
//! through the 9-significant-digit formatter so seeded runs are byte-exact
//! regardless of thread count.

mod fmt;
mod mc;
mod plots;
mod real;
mod solve;
mod synth_sweep;
mod theory;

pub use fmt::fmt_sig9;
pub use mc::cmd_mc_validate;
pub use plots::cmd_emit_plots;
pub use real::{cmd_real_classify, RealClassifyArgs, RealClassifyOutput};
pub use solve::{cmd_solve, SolveArgs, SolveInput, SolveOutput};
pub use synth_sweep::{cmd_synth_classify, SynthClassifyArgs};
pub use theory::cmd_theory_sweep;

use crate::classify::{accuracy, knn_predict, svm_predict, svm_train, KnnConfig, Metric, SvmConfig};
use crate::dataset::LabeledDataset;
use crate::error::Error;
use crate::Result;

/// An evenly spaced threshold grid, inclusive of both ends when the range is
/// an integer multiple of the step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauGrid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl TauGrid {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) {
            return Err(Error::NonFinite("tau grid"));
        }
        if step <= 0.0 {
            return Err(Error::invalid("tau_step", "must be > 0"));
        }
        if max < min {
            return Err(Error::invalid("tau_max", "must be >= tau_min"));
        }
        Ok(Self { min, max, step })
    }

    /// Grid points min, min + step, ..., up to max (with a small tolerance so
    /// exact multiples are not lost to rounding).
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.min + i as f64 * self.step).collect()
    }
}

/// Which classifier a harness command runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierSpec {
    KnnEuclid { k: usize },
    KnnCosine { k: usize },
    Svm,
}

impl ClassifierSpec {
    /// Number of nearest neighbours consulted, 1 for the SVM.
    pub fn k(&self) -> usize {
        match self {
            ClassifierSpec::KnnEuclid { k } | ClassifierSpec::KnnCosine { k } => *k,
            ClassifierSpec::Svm => 1,
        }
    }

    /// Trains on `train`, predicts `test`, and returns the test accuracy.
    pub fn evaluate(&self, train: &LabeledDataset, test: &LabeledDataset, seed: u64) -> Result<f64> {
        let predicted = match self {
            ClassifierSpec::KnnEuclid { k } => {
                let cfg = KnnConfig {
                    k: *k,
                    metric: Metric::Euclidean,
                };
                knn_predict(train, test.features(), &cfg)?.labels
            }
            ClassifierSpec::KnnCosine { k } => {
                let cfg = KnnConfig {
                    k: *k,
                    metric: Metric::Cosine,
                };
                knn_predict(train, test.features(), &cfg)?.labels
            }
            ClassifierSpec::Svm => {
                let cfg = SvmConfig {
                    seed,
                    ..SvmConfig::default()
                };
                let model = svm_train(train, &cfg)?;
                svm_predict(&model, test.features())
            }
        };
        accuracy(&predicted, test.labels())
    }
}

impl std::fmt::Display for ClassifierSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassifierSpec::KnnEuclid { .. } => write!(f, "knn-euclid"),
            ClassifierSpec::KnnCosine { .. } => write!(f, "knn-cosine"),
            ClassifierSpec::Svm => write!(f, "svm"),
        }
    }
}

/// Mean and population standard deviation of a nonempty slice.
pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Name of the quantization-error column, recording which variant was used.
pub(crate) fn quant_error_column(scaled: bool) -> &'static str {
    if scaled {
        "quant_error_scaled"
    } else {
        "quant_error_unscaled"
    }
}

pub(crate) fn validate_mu(mu: f64) -> Result<f64> {
    if !(mu.is_finite() && 0.0 < mu && mu < 1.0) {
        return Err(Error::Usage(format!("--mu must lie in (0, 1), got {mu}")));
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_both_ends() {
        let g = TauGrid::new(-1.0, 1.0, 0.01).unwrap();
        let v = g.values();
        assert_eq!(v.len(), 201);
        assert_eq!(v[0], -1.0);
        assert!((v[200] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_with_uneven_range_stays_within_max() {
        let g = TauGrid::new(0.0, 1.0, 0.4).unwrap();
        let v = g.values();
        assert_eq!(v, vec![0.0, 0.4, 0.8]);
    }

    #[test]
    fn grid_rejects_bad_step() {
        assert!(TauGrid::new(0.0, 1.0, 0.0).is_err());
        assert!(TauGrid::new(1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn mean_std_population_convention() {
        let (m, s) = mean_std(&[1.0, 3.0]);
        assert_eq!(m, 2.0);
        assert_eq!(s, 1.0);
    }
}
