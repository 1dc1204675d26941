//! Element-wise binary and ternary quantization and quantization-error
//! metrics.
//!
//! Binary quantization maps x to 1 when x > tau and to 0 otherwise; ternary
//! quantization maps x to 1 when x > tau, to -1 when x < -tau, and to 0 in
//! between. Boundary values take the middle branch.

use ndarray::Array2;

use crate::error::Error;
use crate::Result;

/// Quantizer family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantKind {
    Binary,
    Ternary,
}

impl std::fmt::Display for QuantKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuantKind::Binary => write!(f, "binary"),
            QuantKind::Ternary => write!(f, "ternary"),
        }
    }
}

/// A quantizer: family plus threshold. Ternary thresholds must be >= 0;
/// binary thresholds may be any finite real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantScheme {
    kind: QuantKind,
    tau: f64,
}

impl QuantScheme {
    pub fn new(kind: QuantKind, tau: f64) -> Result<Self> {
        if !tau.is_finite() {
            return Err(Error::NonFinite("tau"));
        }
        if kind == QuantKind::Ternary && tau < 0.0 {
            return Err(Error::invalid("tau", format!("ternary threshold must be >= 0, got {tau}")));
        }
        Ok(Self { kind, tau })
    }

    pub fn binary(tau: f64) -> Result<Self> {
        Self::new(QuantKind::Binary, tau)
    }

    pub fn ternary(tau: f64) -> Result<Self> {
        Self::new(QuantKind::Ternary, tau)
    }

    pub fn kind(&self) -> QuantKind {
        self.kind
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// Quantizes one value to {-1, 0, 1}. Binary output is confined to {0, 1}.
#[inline]
pub fn quantize_scalar(x: f64, scheme: &QuantScheme) -> i8 {
    let tau = scheme.tau;
    match scheme.kind {
        QuantKind::Binary => {
            if x > tau {
                1
            } else {
                0
            }
        }
        QuantKind::Ternary => {
            if x > tau {
                1
            } else if x < -tau {
                -1
            } else {
                0
            }
        }
    }
}

/// Element-wise quantization of a slice.
pub fn quantize_vector(values: &[f64], scheme: &QuantScheme) -> Vec<i8> {
    values.iter().map(|&x| quantize_scalar(x, scheme)).collect()
}

/// Element-wise quantization into f64 codes, for feeding classifiers.
pub fn quantize_matrix(features: &Array2<f64>, scheme: &QuantScheme) -> Array2<f64> {
    features.mapv(|x| quantize_scalar(x, scheme) as f64)
}

/// Mean squared quantization error. Unscaled: mean of (v_i - q_i)^2.
/// Scaled: min over s >= 0 of mean (v_i - s*q_i)^2, with the optimal
/// s = sum(v*q) / sum(q^2) clamped to 0 when negative and defined as 0
/// when every code is zero.
pub fn quantization_error(values: &[f64], scheme: &QuantScheme, scaled: bool) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("quantization_error"));
    }
    let n = values.len() as f64;
    if scaled {
        let mut dot = 0.0;
        let mut qq = 0.0;
        let mut vv = 0.0;
        for &v in values {
            let q = quantize_scalar(v, scheme) as f64;
            dot += v * q;
            qq += q * q;
            vv += v * v;
        }
        let s = if qq == 0.0 { 0.0 } else { (dot / qq).max(0.0) };
        Ok(((vv - 2.0 * s * dot + s * s * qq) / n).max(0.0))
    } else {
        let sum: f64 = values
            .iter()
            .map(|&v| {
                let q = quantize_scalar(v, scheme) as f64;
                (v - q) * (v - q)
            })
            .sum();
        Ok(sum / n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn ternary_rejects_negative_tau() {
        assert!(QuantScheme::ternary(-0.1).is_err());
        assert!(QuantScheme::binary(-0.1).is_ok());
    }

    #[test]
    fn binary_branches() {
        let s = QuantScheme::binary(0.0).unwrap();
        assert_eq!(quantize_scalar(0.5, &s), 1);
        assert_eq!(quantize_scalar(0.0, &s), 0); // boundary takes the otherwise-branch
        assert_eq!(quantize_scalar(-0.5, &s), 0);
        let s = QuantScheme::binary(0.7).unwrap();
        assert_eq!(quantize_scalar(0.7, &s), 0);
    }

    #[test]
    fn ternary_branches() {
        let s = QuantScheme::ternary(0.0).unwrap();
        assert_eq!(quantize_scalar(0.0, &s), 0); // -tau <= x <= tau branch
        assert_eq!(quantize_scalar(0.1, &s), 1);
        assert_eq!(quantize_scalar(-0.1, &s), -1);
        let s = QuantScheme::ternary(0.5).unwrap();
        assert_eq!(quantize_scalar(0.5, &s), 0);
        assert_eq!(quantize_scalar(-0.5, &s), 0);
    }

    #[test]
    fn vector_application_is_element_wise() {
        let s = QuantScheme::ternary(0.5).unwrap();
        assert_eq!(quantize_vector(&[-1.0, 0.0, 1.0], &s), vec![-1, 0, 1]);
        let s = QuantScheme::binary(0.0).unwrap();
        assert_eq!(quantize_vector(&[-1.0, 0.0, 1.0], &s), vec![0, 0, 1]);
        assert_eq!(
            quantize_vector(&[0.0; 4], &QuantScheme::ternary(0.0).unwrap()),
            vec![0; 4]
        );
    }

    #[test]
    fn error_zero_when_codes_match_input() {
        let s = QuantScheme::binary(0.0).unwrap();
        assert_eq!(quantization_error(&[1.0, 1.0], &s, false).unwrap(), 0.0);
    }

    #[test]
    fn scaled_error_recovers_uniform_scale() {
        let s = QuantScheme::binary(0.0).unwrap();
        assert_abs_diff_eq!(
            quantization_error(&[2.0, 2.0], &s, true).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn dead_zone_error_is_mean_square() {
        let s = QuantScheme::ternary(1.0).unwrap();
        assert_abs_diff_eq!(
            quantization_error(&[0.5, -0.5], &s, false).unwrap(),
            0.25,
            epsilon = 1e-15
        );
    }

    #[test]
    fn negative_optimal_scale_is_clamped() {
        // All positive codes on negative data: s* would be negative, so s = 0
        // and the error is plain mean square.
        let s = QuantScheme::binary(-10.0).unwrap();
        let v = [-1.0, -2.0];
        assert_abs_diff_eq!(
            quantization_error(&v, &s, true).unwrap(),
            2.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn error_on_empty_input_is_rejected() {
        let s = QuantScheme::binary(0.0).unwrap();
        assert!(matches!(
            quantization_error(&[], &s, false),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn huge_ternary_threshold_zeroes_everything() {
        let s = QuantScheme::ternary(1e12).unwrap();
        let v = [3.0, -4.0, 0.5];
        assert_eq!(quantize_vector(&v, &s), vec![0, 0, 0]);
        let expected = v.iter().map(|x| x * x).sum::<f64>() / 3.0;
        assert_abs_diff_eq!(
            quantization_error(&v, &s, false).unwrap(),
            expected,
            epsilon = 1e-12
        );
    }

    proptest! {
        #[test]
        fn ternary_is_odd(x in -10.0f64..10.0, tau in 0.0f64..5.0) {
            let s = QuantScheme::ternary(tau).unwrap();
            prop_assert_eq!(quantize_scalar(-x, &s), -quantize_scalar(x, &s));
        }

        #[test]
        fn quantizers_are_monotone(a in -10.0f64..10.0, b in -10.0f64..10.0, tau in 0.0f64..5.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            for s in [QuantScheme::binary(tau).unwrap(), QuantScheme::ternary(tau).unwrap()] {
                prop_assert!(quantize_scalar(lo, &s) <= quantize_scalar(hi, &s));
            }
        }

        #[test]
        fn outputs_stay_in_range(x in -100.0f64..100.0, tau in 0.0f64..5.0) {
            let b = quantize_scalar(x, &QuantScheme::binary(tau).unwrap());
            prop_assert!(b == 0 || b == 1);
            let t = quantize_scalar(x, &QuantScheme::ternary(tau).unwrap());
            prop_assert!((-1..=1).contains(&t));
        }

        #[test]
        fn scaled_error_never_exceeds_unscaled(
            v in proptest::collection::vec(-5.0f64..5.0, 1..40),
            tau in 0.0f64..3.0,
        ) {
            for s in [QuantScheme::binary(tau).unwrap(), QuantScheme::ternary(tau).unwrap()] {
                let scaled = quantization_error(&v, &s, true).unwrap();
                let unscaled = quantization_error(&v, &s, false).unwrap();
                prop_assert!(scaled <= unscaled + 1e-12);
            }
        }
    }
}
