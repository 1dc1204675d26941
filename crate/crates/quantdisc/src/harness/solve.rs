//! Threshold solving, either for a theoretical model or for a dataset.

use std::path::PathBuf;

use super::{fmt_sig9, ClassifierSpec};
use crate::dataset::LabeledDataset;
use crate::error::Error;
use crate::gaussian::{standardize_dataset, standardize_params, ClassPairModel, RawClassParams};
use crate::quant::{quantize_matrix, QuantKind, QuantScheme};
use crate::rng::derive_seed;
use crate::solver::{solve_mqe_threshold, solve_threshold, SolverConfig};
use crate::synth::split;
use crate::Result;

/// What to solve against.
#[derive(Debug, Clone)]
pub enum SolveInput {
    /// Theoretical model with the given mean (sigma^2 = 1 - mu^2).
    Theory { mu: f64 },
    /// Two-class dataset: standardize, fit a symmetric model, then solve and
    /// compare KNN accuracy at the solved threshold, at the MQE baseline
    /// threshold, and on the original features.
    Empirical { path: PathBuf, header: bool },
}

#[derive(Debug, Clone)]
pub struct SolveArgs {
    pub input: SolveInput,
    pub kind: QuantKind,
    pub solver: SolverConfig,
    /// Neighbour count for the empirical-mode KNN accuracy triple.
    pub k: usize,
    pub seed: u64,
    pub train_fraction: f64,
    /// Use the scaled reconstruction error in the MQE baseline.
    pub scaled_mqe: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub csv: String,
    pub warnings: Vec<String>,
    pub converged: bool,
}

/// Fits the symmetric standardized model to a two-class dataset:
/// per dimension, the class means and pooled within-class variance are
/// standardized, then the per-dimension mean magnitudes are averaged.
fn fit_model(data: &LabeledDataset, warnings: &mut Vec<String>) -> Result<ClassPairModel> {
    let classes = data.class_labels();
    if classes.len() != 2 {
        return Err(Error::Usage(format!(
            "solve needs a two-class dataset, found {} classes",
            classes.len()
        )));
    }
    let rows0 = data.rows_with_label(classes[0]);
    let rows1 = data.rows_with_label(classes[1]);
    let n = data.n_samples() as f64;

    let mut mus = Vec::new();
    for (j, col) in data.features().columns().into_iter().enumerate() {
        let m0 = rows0.iter().map(|&i| col[i]).sum::<f64>() / rows0.len() as f64;
        let m1 = rows1.iter().map(|&i| col[i]).sum::<f64>() / rows1.len() as f64;
        let within: f64 = rows0.iter().map(|&i| (col[i] - m0) * (col[i] - m0)).sum::<f64>()
            + rows1.iter().map(|&i| (col[i] - m1) * (col[i] - m1)).sum::<f64>();
        let var = within / n;
        if (m0 - m1).abs() < 1e-12 || var <= 0.0 {
            warnings.push(format!("dimension {j} is uninformative; skipped in model fit"));
            continue;
        }
        let std = standardize_params(&RawClassParams::new(m0, m1, var)?)?;
        mus.push(std.model.mu());
    }
    if mus.is_empty() {
        return Err(Error::Usage(
            "no informative dimensions: cannot fit a class-pair model".into(),
        ));
    }
    let mu_hat = mus.iter().sum::<f64>() / mus.len() as f64;
    ClassPairModel::standardized(mu_hat)
}

/// Runs the certificate solver. Theory mode emits the solver row only;
/// empirical mode appends the MQE threshold and the accuracy triple.
///
/// CSV columns (theory): kind, tau_star, objective, iterations, converged,
/// condition_satisfied. Empirical adds: tau_mqe, acc_original, acc_ours,
/// acc_mqe, fitted_mu.
pub fn cmd_solve(args: &SolveArgs) -> Result<SolveOutput> {
    let mut warnings = Vec::new();
    match &args.input {
        SolveInput::Theory { mu } => {
            let mu = super::validate_mu(*mu)?;
            let model = ClassPairModel::standardized(mu)?;
            let res = solve_threshold(&model, args.kind, &args.solver)?;
            if !res.converged {
                warnings.push(format!(
                    "solver did not meet the gradient tolerance (tau* = {})",
                    res.tau_star
                ));
            }
            let csv = format!(
                "kind,tau_star,objective,iterations,converged,condition_satisfied\n{},{},{},{},{},{}\n",
                args.kind,
                fmt_sig9(res.tau_star),
                fmt_sig9(res.objective_value),
                res.iterations,
                res.converged,
                res.condition_satisfied
            );
            Ok(SolveOutput {
                csv,
                warnings,
                converged: res.converged,
            })
        }
        SolveInput::Empirical { path, header } => {
            let data = LabeledDataset::read_csv_path(path, *header)?;
            let standardized = standardize_dataset(&data);
            for &j in &standardized.constant_dims {
                warnings.push(format!("dimension {j} is constant; standardized to zeros"));
            }
            let model = fit_model(&standardized.data, &mut warnings)?;
            let res = solve_threshold(&model, args.kind, &args.solver)?;
            if !res.converged {
                warnings.push(format!(
                    "solver did not meet the gradient tolerance (tau* = {})",
                    res.tau_star
                ));
            }

            let flat: Vec<f64> = standardized.data.features().iter().copied().collect();
            let tau_mqe = solve_mqe_threshold(&flat, args.kind, args.scaled_mqe)?;

            let (train, test) = split(
                &standardized.data,
                args.train_fraction,
                derive_seed(args.seed, 0),
            )?;
            let classifier = ClassifierSpec::KnnEuclid { k: args.k };
            let acc_original = classifier.evaluate(&train, &test, derive_seed(args.seed, 1))?;
            let acc_at = |tau: f64| -> Result<f64> {
                let scheme = QuantScheme::new(args.kind, tau)?;
                let q_train = LabeledDataset::new(
                    quantize_matrix(train.features(), &scheme),
                    train.labels().to_vec(),
                )?;
                let q_test = LabeledDataset::new(
                    quantize_matrix(test.features(), &scheme),
                    test.labels().to_vec(),
                )?;
                classifier.evaluate(&q_train, &q_test, derive_seed(args.seed, 2))
            };
            let acc_ours = acc_at(res.tau_star)?;
            let acc_mqe = acc_at(tau_mqe)?;

            let csv = format!(
                "kind,tau_star,objective,iterations,converged,condition_satisfied,tau_mqe,acc_original,acc_ours,acc_mqe,fitted_mu\n{},{},{},{},{},{},{},{},{},{},{}\n",
                args.kind,
                fmt_sig9(res.tau_star),
                fmt_sig9(res.objective_value),
                res.iterations,
                res.converged,
                res.condition_satisfied,
                fmt_sig9(tau_mqe),
                fmt_sig9(acc_original),
                fmt_sig9(acc_ours),
                fmt_sig9(acc_mqe),
                fmt_sig9(model.mu())
            );
            Ok(SolveOutput {
                csv,
                warnings,
                converged: res.converged,
            })
        }
    }
}
