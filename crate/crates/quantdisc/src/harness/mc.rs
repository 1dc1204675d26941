//! Monte-Carlo validation of the closed-form discrimination values.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::{fmt_sig9, validate_mu, TauGrid};
use crate::discrim::empirical_discrimination;
use crate::error::Error;
use crate::gaussian::ClassPairModel;
use crate::quant::{QuantKind, QuantScheme};
use crate::rng::unit_rng;
use crate::Result;

/// Draws `n_samples` per class from the standardized model and estimates the
/// discrimination of the original and quantized samples across the grid.
///
/// CSV columns: tau, d_empirical, dq_empirical.
pub fn cmd_mc_validate(
    mu: f64,
    grid: &TauGrid,
    kind: QuantKind,
    n_samples: usize,
    seed: u64,
) -> Result<String> {
    let mu = validate_mu(mu)?;
    if n_samples < 100 {
        return Err(Error::Usage(format!(
            "--samples must be >= 100, got {n_samples}"
        )));
    }
    if kind == QuantKind::Ternary && grid.min < 0.0 {
        return Err(Error::Usage(
            "ternary thresholds must be >= 0; raise --tau-min".into(),
        ));
    }
    let model = ClassPairModel::standardized(mu)?;
    let sigma = model.sigma();

    let draw = |stream: u64, center: f64| -> Vec<f64> {
        let mut rng = unit_rng(seed, stream);
        (0..n_samples)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                center + sigma * z
            })
            .collect()
    };
    let xs = draw(0, model.mu());
    let ys = draw(1, -model.mu());

    let d_emp = empirical_discrimination(&xs, &ys, None)?;

    let rows: Vec<Result<String>> = grid
        .values()
        .into_par_iter()
        .map(|tau| {
            let scheme = QuantScheme::new(kind, tau)?;
            let dq = empirical_discrimination(&xs, &ys, Some(&scheme))?;
            Ok(format!(
                "{},{},{}",
                fmt_sig9(tau),
                fmt_sig9(d_emp),
                fmt_sig9(dq)
            ))
        })
        .collect();

    let mut out = String::from("tau,d_empirical,dq_empirical\n");
    for row in rows {
        out.push_str(&row?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrim::{d_binary, d_original};
    use approx::assert_abs_diff_eq;

    #[test]
    fn empirical_values_track_closed_forms_at_tau_zero() {
        let grid = TauGrid::new(0.0, 0.0, 1.0).unwrap();
        let csv = cmd_mc_validate(0.8, &grid, QuantKind::Binary, 200_000, 1).unwrap();
        let line = csv.lines().nth(1).unwrap();
        let mut it = line.split(',');
        it.next();
        let d_emp: f64 = it.next().unwrap().parse().unwrap();
        let dq_emp: f64 = it.next().unwrap().parse().unwrap();
        let m = ClassPairModel::standardized(0.8).unwrap();
        assert_abs_diff_eq!(d_emp, d_original(&m), epsilon = 0.05);
        assert_abs_diff_eq!(dq_emp, d_binary(&m, 0.0), epsilon = 0.05);
    }

    #[test]
    fn rejects_tiny_sample_counts() {
        let grid = TauGrid::new(0.0, 1.0, 0.5).unwrap();
        assert!(cmd_mc_validate(0.8, &grid, QuantKind::Binary, 50, 0).is_err());
    }

    #[test]
    fn seeded_runs_are_identical() {
        let grid = TauGrid::new(0.0, 0.4, 0.1).unwrap();
        let a = cmd_mc_validate(0.8, &grid, QuantKind::Ternary, 500, 9).unwrap();
        let b = cmd_mc_validate(0.8, &grid, QuantKind::Ternary, 500, 9).unwrap();
        assert_eq!(a, b);
    }
}
