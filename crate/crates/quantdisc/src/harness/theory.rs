//! Closed-form certificate sweep over a threshold grid.

use rayon::prelude::*;

use super::{fmt_sig9, validate_mu, TauGrid};
use crate::discrim::{d_binary, d_original, d_ternary, binary_condition, ternary_condition};
use crate::error::Error;
use crate::gaussian::ClassPairModel;
use crate::quant::QuantKind;
use crate::Result;

/// Evaluates the certificate condition and both closed-form discrimination
/// values across the grid, for the standardized model with the given mean.
///
/// CSV columns: tau, condition_value, d_original, d_quantized.
pub fn cmd_theory_sweep(mu: f64, grid: &TauGrid, kind: QuantKind) -> Result<String> {
    let mu = validate_mu(mu)?;
    if kind == QuantKind::Ternary && grid.min < 0.0 {
        return Err(Error::Usage(
            "ternary thresholds must be >= 0; raise --tau-min".into(),
        ));
    }
    let model = ClassPairModel::standardized(mu)?;
    let d0 = d_original(&model);

    let rows: Vec<String> = grid
        .values()
        .into_par_iter()
        .map(|tau| {
            let (condition, dq) = match kind {
                QuantKind::Binary => (binary_condition(&model, tau), d_binary(&model, tau)),
                QuantKind::Ternary => (ternary_condition(&model, tau), d_ternary(&model, tau)),
            };
            format!(
                "{},{},{},{}",
                fmt_sig9(tau),
                fmt_sig9(condition),
                fmt_sig9(d0),
                fmt_sig9(dq)
            )
        })
        .collect();

    let mut out = String::from("tau,condition_value,d_original,d_quantized\n");
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_binary_region_is_contiguous_around_zero() {
        let grid = TauGrid::new(-1.0, 1.0, 0.01).unwrap();
        let csv = cmd_theory_sweep(0.8, &grid, QuantKind::Binary).unwrap();
        let positives: Vec<f64> = csv
            .lines()
            .skip(1)
            .map(|l| {
                let mut it = l.split(',');
                let tau: f64 = it.next().unwrap().parse().unwrap();
                let cond: f64 = it.next().unwrap().parse().unwrap();
                (tau, cond)
            })
            .filter(|(_, c)| *c > 0.0)
            .map(|(t, _)| t)
            .collect();
        assert!(!positives.is_empty());
        let lo = positives.first().unwrap();
        let hi = positives.last().unwrap();
        assert!((lo + 0.2).abs() <= 0.011, "lower bound {lo}");
        assert!((hi - 0.2).abs() <= 0.011, "upper bound {hi}");
    }

    #[test]
    fn no_positive_point_below_existence_threshold() {
        let grid = TauGrid::new(-1.0, 1.0, 0.01).unwrap();
        for kind in [QuantKind::Binary, QuantKind::Ternary] {
            let g = if kind == QuantKind::Ternary {
                TauGrid::new(0.0, 1.0, 0.01).unwrap()
            } else {
                grid
            };
            let csv = cmd_theory_sweep(0.5, &g, kind).unwrap();
            let any_positive = csv
                .lines()
                .skip(1)
                .any(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap() > 0.0);
            assert!(!any_positive, "{kind} should not enhance at mu=0.5");
        }
    }

    #[test]
    fn rejects_bad_mu_and_negative_ternary_grid() {
        let grid = TauGrid::new(0.0, 1.0, 0.1).unwrap();
        assert!(cmd_theory_sweep(1.2, &grid, QuantKind::Binary).is_err());
        let neg = TauGrid::new(-0.5, 1.0, 0.1).unwrap();
        assert!(cmd_theory_sweep(0.8, &neg, QuantKind::Ternary).is_err());
    }
}
