//! Feature discrimination of original and quantized two-class Gaussian data.
//!
//! Discrimination is the ratio of the expected inter-class squared distance
//! to the sum of the expected intra-class squared distances. For the
//! symmetric model N(+-mu, sigma^2) all three quantities have closed forms,
//! and positivity of a certificate expression is equivalent to quantization
//! increasing discrimination. The empirical estimator mirrors the same
//! definition on finite samples.

use crate::error::Error;
use crate::gaussian::{phi, ClassPairModel};
use crate::quant::{quantize_scalar, QuantKind, QuantScheme};
use crate::Result;

/// Clamp bounds applied to tail probabilities before closed-form ratios, so
/// extreme thresholds saturate instead of producing 0/0.
const PROB_FLOOR: f64 = 1e-300;
const PROB_CEIL: f64 = 1.0 - 1e-16;

fn clamp_prob(p: f64) -> f64 {
    p.clamp(PROB_FLOOR, PROB_CEIL)
}

/// Tail probabilities (alpha, beta) of the binary quantizer:
/// alpha = Phi((tau - mu)/sigma), beta = Phi((tau + mu)/sigma).
pub fn binary_alpha_beta(model: &ClassPairModel, tau: f64) -> (f64, f64) {
    let alpha = phi((tau - model.mu()) / model.sigma());
    let beta = phi((tau + model.mu()) / model.sigma());
    (alpha, beta)
}

/// Tail probabilities (alpha, beta) of the ternary quantizer:
/// alpha = Phi((-tau - mu)/sigma), beta = Phi((-tau + mu)/sigma).
pub fn ternary_alpha_beta(model: &ClassPairModel, tau: f64) -> (f64, f64) {
    let alpha = phi((-tau - model.mu()) / model.sigma());
    let beta = phi((-tau + model.mu()) / model.sigma());
    (alpha, beta)
}

/// Discrimination of the original data: (sigma^2 + 2 mu^2) / (2 sigma^2).
pub fn d_original(model: &ClassPairModel) -> f64 {
    let mu2 = model.mu() * model.mu();
    let s2 = model.sigma2();
    (s2 + 2.0 * mu2) / (2.0 * s2)
}

/// Discrimination of binary-quantized data.
pub fn d_binary(model: &ClassPairModel, tau: f64) -> f64 {
    let (alpha, beta) = binary_alpha_beta(model, tau);
    let a = clamp_prob(alpha);
    let b = clamp_prob(beta);
    (a - 2.0 * a * b + b) / ((2.0 * a - 2.0 * a * a) + (2.0 * b - 2.0 * b * b))
}

/// Discrimination of ternary-quantized data. Intended for tau >= 0; the
/// expression extends smoothly to slightly negative tau, which finite
/// difference probes rely on.
pub fn d_ternary(model: &ClassPairModel, tau: f64) -> f64 {
    let (alpha, beta) = ternary_alpha_beta(model, tau);
    let a = clamp_prob(alpha);
    let b = clamp_prob(beta);
    (a + a * a - 2.0 * a * b + b + b * b) / (2.0 * (a - a * a + 2.0 * a * b + b - b * b))
}

/// Certificate for binary quantization: the returned value is positive
/// exactly when binary quantization at tau increases discrimination.
pub fn binary_condition(model: &ClassPairModel, tau: f64) -> f64 {
    let (alpha, beta) = binary_alpha_beta(model, tau);
    let mu = model.mu();
    let mu2 = mu * mu;
    beta - alpha
        + (mu2 * (1.0 - 2.0 * beta) - mu * (mu2 + 4.0 * beta * (1.0 - beta)).sqrt()) / (1.0 + mu2)
}

/// Certificate for ternary quantization: positive exactly when ternary
/// quantization at tau increases discrimination. Intended for tau >= 0; the
/// expression extends smoothly below zero for derivative probes.
pub fn ternary_condition(model: &ClassPairModel, tau: f64) -> f64 {
    let (alpha, beta) = ternary_alpha_beta(model, tau);
    let mu2 = model.mu() * model.mu();
    beta - alpha + (mu2 - (mu2 * mu2 + 8.0 * mu2 * beta).sqrt()) / 2.0
}

/// Everything known about one (model, scheme) point.
#[derive(Debug, Clone, Copy)]
pub struct DiscriminationReport {
    pub model: ClassPairModel,
    pub scheme: QuantScheme,
    pub alpha: f64,
    pub beta: f64,
    pub d_original: f64,
    pub d_quantized: f64,
    pub condition_value: f64,
    pub condition_holds: bool,
}

/// Evaluates closed-form discrimination and the certificate at one point.
pub fn discrimination_report(model: &ClassPairModel, scheme: &QuantScheme) -> DiscriminationReport {
    let tau = scheme.tau();
    let (alpha, beta, d_quantized, condition_value) = match scheme.kind() {
        QuantKind::Binary => {
            let (a, b) = binary_alpha_beta(model, tau);
            (a, b, d_binary(model, tau), binary_condition(model, tau))
        }
        QuantKind::Ternary => {
            let (a, b) = ternary_alpha_beta(model, tau);
            (a, b, d_ternary(model, tau), ternary_condition(model, tau))
        }
    };
    DiscriminationReport {
        model: *model,
        scheme: *scheme,
        alpha,
        beta,
        d_original: d_original(model),
        d_quantized,
        condition_value,
        condition_holds: condition_value > 0.0,
    }
}

/// Mean squared difference over shifted pairs (x_i, y_{(i + n/2) mod n}).
/// The index shift keeps the pairing meaningful even when both slices are
/// the same sample set.
fn inter_mean_sq(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len().min(y.len());
    let shift = n / 2;
    let mut sum = 0.0;
    for i in 0..n {
        let d = x[i] - y[(i + shift) % n];
        sum += d * d;
    }
    sum / n as f64
}

/// Mean squared difference over disjoint half pairs (v_i, v_{i + n/2}).
fn intra_mean_sq(v: &[f64]) -> f64 {
    let m = v.len() / 2;
    let mut sum = 0.0;
    for i in 0..m {
        let d = v[i] - v[i + m];
        sum += d * d;
    }
    sum / m as f64
}

/// Plug-in estimate of the discrimination between two sample sets, using
/// disjoint-pair U-statistics for each expectation. When a scheme is given,
/// samples are quantized first. Returns infinity when all samples coincide
/// after quantization (zero intra-class spread).
pub fn empirical_discrimination(
    samples_x: &[f64],
    samples_y: &[f64],
    scheme: Option<&QuantScheme>,
) -> Result<f64> {
    let got = samples_x.len().min(samples_y.len());
    if got < 2 {
        return Err(Error::TooFewSamples { needed: 2, got });
    }
    let (x, y): (Vec<f64>, Vec<f64>) = match scheme {
        Some(s) => (
            samples_x
                .iter()
                .map(|&v| quantize_scalar(v, s) as f64)
                .collect(),
            samples_y
                .iter()
                .map(|&v| quantize_scalar(v, s) as f64)
                .collect(),
        ),
        None => (samples_x.to_vec(), samples_y.to_vec()),
    };
    let inter = inter_mean_sq(&x, &y);
    let denom = intra_mean_sq(&x) + intra_mean_sq(&y);
    if denom == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(inter / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fig1_model() -> ClassPairModel {
        ClassPairModel::standardized(0.8).unwrap()
    }

    #[test]
    fn d_original_closed_form_value() {
        // (0.36 + 2*0.64) / (2*0.36)
        assert_abs_diff_eq!(d_original(&fig1_model()), 2.2777778, epsilon = 1e-6);
    }

    #[test]
    fn d_original_identical_classes_limit() {
        let m = ClassPairModel::standardized(1e-9).unwrap();
        assert_abs_diff_eq!(d_original(&m), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn d_binary_symmetric_point_identity() {
        // At tau = 0, beta = 1 - alpha, so D_b = (alpha + beta - 2 alpha beta) / (4 alpha beta).
        let m = fig1_model();
        let (a, b) = binary_alpha_beta(&m, 0.0);
        assert_abs_diff_eq!(b, 1.0 - a, epsilon = 1e-15);
        let simplified = (a + b - 2.0 * a * b) / (4.0 * a * b);
        assert_abs_diff_eq!(d_binary(&m, 0.0), simplified, epsilon = 1e-12);
    }

    #[test]
    fn d_binary_declines_off_center() {
        let m = fig1_model();
        assert!(d_binary(&m, 0.3) < d_binary(&m, 0.0));
    }

    #[test]
    fn ternary_at_zero_matches_binary_at_zero() {
        for mu in [0.2, 0.5, 0.8, 0.95] {
            let m = ClassPairModel::standardized(mu).unwrap();
            assert_abs_diff_eq!(d_ternary(&m, 0.0), d_binary(&m, 0.0), epsilon = 1e-9);
        }
    }

    #[test]
    fn condition_values_at_fig1_points() {
        let m = fig1_model();
        assert_abs_diff_eq!(binary_condition(&m, 0.0), 0.0177, epsilon = 5e-4);
        assert_abs_diff_eq!(binary_condition(&m, 0.3), -0.0277, epsilon = 5e-4);
        assert_abs_diff_eq!(ternary_condition(&m, 0.0), 0.0126, epsilon = 5e-4);
        assert_abs_diff_eq!(ternary_condition(&m, 0.6), -0.0129, epsilon = 5e-4);
    }

    #[test]
    fn condition_sign_is_symmetric_in_tau() {
        // The certificate's value is not even in tau, but its sign is:
        // quantizing at -tau mirrors both classes, so the enhancement region
        // is symmetric. (Checked through the closed forms.)
        let m = fig1_model();
        let mut tau = 0.0;
        while tau <= 3.0 {
            let plus = binary_condition(&m, tau);
            let minus = binary_condition(&m, -tau);
            if plus.abs() > 1e-10 && minus.abs() > 1e-10 {
                assert_eq!(plus > 0.0, minus > 0.0, "sign differs at tau = {tau}");
            }
            assert_abs_diff_eq!(d_binary(&m, tau), d_binary(&m, -tau), epsilon = 1e-12);
            tau += 0.01;
        }
    }

    #[test]
    fn ternary_condition_negative_for_weakly_separated_classes() {
        let m = ClassPairModel::standardized(0.05).unwrap();
        let mut tau = 0.0;
        while tau <= 3.0 {
            assert!(ternary_condition(&m, tau) < 0.0);
            tau += 0.1;
        }
    }

    #[test]
    fn certificate_sign_matches_closed_form_comparison() {
        // sign(condition) must agree with sign(d_quantized - d_original)
        // across the validation grid.
        for i in 1..=19 {
            let mu = 0.05 * i as f64;
            let m = ClassPairModel::standardized(mu).unwrap();
            let d0 = d_original(&m);
            let mut tau = -3.0;
            while tau <= 3.0 {
                let c = binary_condition(&m, tau);
                if c.abs() > 1e-10 {
                    assert_eq!(
                        c > 0.0,
                        d_binary(&m, tau) > d0,
                        "binary mismatch at mu={mu} tau={tau}"
                    );
                }
                if tau >= 0.0 {
                    let c = ternary_condition(&m, tau);
                    if c.abs() > 1e-10 {
                        assert_eq!(
                            c > 0.0,
                            d_ternary(&m, tau) > d0,
                            "ternary mismatch at mu={mu} tau={tau}"
                        );
                    }
                }
                tau += 0.01;
            }
        }
    }

    #[test]
    fn alpha_below_beta_on_grid() {
        for i in 1..=19 {
            let m = ClassPairModel::standardized(0.05 * i as f64).unwrap();
            let mut tau = -3.0;
            while tau <= 3.0 {
                let (a, b) = binary_alpha_beta(&m, tau);
                assert!(a < b);
                if tau >= 0.0 {
                    let (a, b) = ternary_alpha_beta(&m, tau);
                    assert!(a < b);
                }
                tau += 0.05;
            }
        }
    }

    #[test]
    fn report_is_internally_consistent() {
        let m = fig1_model();
        let r = discrimination_report(&m, &QuantScheme::ternary(0.25).unwrap());
        assert!(r.alpha < r.beta);
        assert_eq!(r.condition_holds, r.condition_value > 0.0);
        assert_eq!(r.condition_holds, r.d_quantized > r.d_original);
    }

    #[test]
    fn empirical_same_samples_gives_half() {
        let v: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.7).sin()).collect();
        let d = empirical_discrimination(&v, &v, None).unwrap();
        assert_abs_diff_eq!(d, 0.5, epsilon = 0.05);
    }

    #[test]
    fn empirical_rejects_tiny_samples() {
        assert!(matches!(
            empirical_discrimination(&[1.0], &[1.0, 2.0], None),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn empirical_zero_denominator_signals_infinity() {
        let xs = [5.0, 5.0, 5.0, 5.0];
        let ys = [-5.0, -5.0, -5.0, -5.0];
        let s = QuantScheme::ternary(1.0).unwrap();
        assert_eq!(
            empirical_discrimination(&xs, &ys, Some(&s)).unwrap(),
            f64::INFINITY
        );
    }
}
