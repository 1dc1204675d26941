//! Normal-distribution primitives and Z-score standardization of two-class
//! Gaussian mixtures.
//!
//! The central type is [`ClassPairModel`]: two classes distributed as
//! N(mu, sigma^2) and N(-mu, sigma^2). Standardizing any equal-variance
//! two-class mixture produces such a model with `mu^2 + sigma^2 = 1`,
//! which is the parameterization every other module consumes.

use ndarray::Array2;

use crate::dataset::LabeledDataset;
use crate::error::Error;
use crate::Result;

/// Pooled variance below which a dimension is treated as constant.
const CONSTANT_DIM_VAR: f64 = 1e-15;

/// Standard normal CDF, evaluated without input checks.
pub(crate) fn phi(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Standard normal density, evaluated without input checks.
pub(crate) fn norm_pdf(x: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal cumulative distribution function.
pub fn std_normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    Ok(phi(x))
}

/// Standard normal probability density function.
pub fn std_normal_pdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    Ok(norm_pdf(x))
}

/// Raw parameters of two Gaussian classes sharing one variance:
/// class 1 ~ N(mu1, sigma2), class 2 ~ N(mu2, sigma2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawClassParams {
    pub mu1: f64,
    pub mu2: f64,
    pub sigma2: f64,
}

impl RawClassParams {
    pub fn new(mu1: f64, mu2: f64, sigma2: f64) -> Result<Self> {
        if !mu1.is_finite() || !mu2.is_finite() {
            return Err(Error::NonFinite("mu"));
        }
        if !sigma2.is_finite() || sigma2 <= 0.0 {
            return Err(Error::invalid("sigma2", format!("must be > 0, got {sigma2}")));
        }
        if mu1 == mu2 {
            return Err(Error::DegenerateClasses);
        }
        Ok(Self { mu1, mu2, sigma2 })
    }
}

/// Two symmetric Gaussian classes N(mu, sigma^2) and N(-mu, sigma^2),
/// with mu in (0, 1) and sigma > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassPairModel {
    mu: f64,
    sigma: f64,
}

impl ClassPairModel {
    /// Builds a model from mean magnitude and standard deviation.
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() {
            return Err(Error::NonFinite("model parameter"));
        }
        if !(0.0 < mu && mu < 1.0) {
            return Err(Error::invalid("mu", format!("must lie in (0, 1), got {mu}")));
        }
        if sigma <= 0.0 {
            return Err(Error::invalid("sigma", format!("must be > 0, got {sigma}")));
        }
        Ok(Self { mu, sigma })
    }

    /// Builds the standardized model with sigma^2 = 1 - mu^2.
    pub fn standardized(mu: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::NonFinite("mu"));
        }
        if !(0.0 < mu && mu < 1.0) {
            return Err(Error::invalid("mu", format!("must lie in (0, 1), got {mu}")));
        }
        Ok(Self {
            mu,
            sigma: (1.0 - mu * mu).sqrt(),
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma * self.sigma
    }
}

/// Result of standardizing raw two-class parameters.
#[derive(Debug, Clone, Copy)]
pub struct Standardized {
    pub model: ClassPairModel,
    /// True when the class roles were swapped to make the returned mean
    /// magnitude positive (i.e. the input had mu1 < mu2).
    pub classes_swapped: bool,
}

/// Maps raw class parameters to the standardized symmetric model:
/// mu~ = (|mu1 - mu2| / 2) / sqrt(sigma^2 + (mu1 - mu2)^2 / 4) and
/// sigma~^2 = sigma^2 / (sigma^2 + (mu1 - mu2)^2 / 4), so that
/// mu~^2 + sigma~^2 = 1.
pub fn standardize_params(raw: &RawClassParams) -> Result<Standardized> {
    let diff = raw.mu1 - raw.mu2;
    if diff == 0.0 {
        return Err(Error::DegenerateClasses);
    }
    let pooled_var = raw.sigma2 + 0.25 * diff * diff;
    let scale = pooled_var.sqrt();
    let mu = (diff.abs() / 2.0) / scale;
    let sigma = raw.sigma2.sqrt() / scale;
    let model = ClassPairModel::new(mu, sigma)?;
    Ok(Standardized {
        model,
        classes_swapped: diff < 0.0,
    })
}

/// A dataset after per-dimension Z-score standardization.
#[derive(Debug, Clone)]
pub struct StandardizedDataset {
    pub data: LabeledDataset,
    /// Indices of dimensions whose pooled variance was below the constant
    /// threshold; those columns were passed through as all zeros.
    pub constant_dims: Vec<usize>,
}

/// Standardizes each dimension of the pooled mixture to mean 0 and variance 1
/// (population convention, divisor N). Constant dimensions become all zeros
/// and are reported rather than treated as failures.
pub fn standardize_dataset(data: &LabeledDataset) -> StandardizedDataset {
    let features = data.features();
    let n = features.nrows() as f64;
    let mut out = Array2::<f64>::zeros(features.raw_dim());
    let mut constant_dims = Vec::new();

    for (j, col) in features.columns().into_iter().enumerate() {
        let mean = col.sum() / n;
        let var = col.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / n;
        if var < CONSTANT_DIM_VAR {
            constant_dims.push(j);
            continue;
        }
        let inv_sd = var.sqrt().recip();
        for (i, &x) in col.iter().enumerate() {
            out[[i, j]] = (x - mean) * inv_sd;
        }
    }

    let data = LabeledDataset::new(out, data.labels().to_vec())
        .expect("standardization preserves dataset shape");
    StandardizedDataset {
        data,
        constant_dims,
    }
}
