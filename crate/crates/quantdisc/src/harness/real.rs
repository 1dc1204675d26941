//! Class-pair classification sweeps over ingested feature datasets, with
//! thresholds parameterized as tau = gamma * eta.

use std::path::PathBuf;

use rayon::prelude::*;

use super::{fmt_sig9, mean_std, quant_error_column, ClassifierSpec};
use crate::dataset::LabeledDataset;
use crate::error::Error;
use crate::gaussian::standardize_dataset;
use crate::quant::{quantization_error, quantize_matrix, QuantKind, QuantScheme};
use crate::rng::{derive_seed, unit_rng};
use crate::synth::split;
use crate::Result;

/// Default cap on the number of class pairs evaluated.
const DEFAULT_MAX_PAIRS: usize = 45;

/// Substream index for pair sampling.
const PAIR_STREAM: u64 = u64::MAX - 2;

#[derive(Debug, Clone)]
pub struct RealClassifyArgs {
    pub path: PathBuf,
    pub header: bool,
    /// Scaling factors gamma; thresholds are gamma * eta with eta the mean
    /// absolute feature value over all participating vectors.
    pub gamma_grid: Vec<f64>,
    pub kind: QuantKind,
    pub classifier: ClassifierSpec,
    /// How many class pairs to sample; defaults to min(45, all pairs).
    pub pairs: Option<usize>,
    pub seed: u64,
    pub train_fraction: f64,
    pub scaled_error: bool,
}

#[derive(Debug, Clone)]
pub struct RealClassifyOutput {
    pub csv: String,
    pub warnings: Vec<String>,
    /// The eta used for the run.
    pub eta: f64,
}

/// Runs the gamma sweep. Class pairs are sampled uniformly without
/// replacement (seeded); pairs whose classes have fewer than 2k samples are
/// skipped with a warning.
///
/// CSV columns: gamma, tau, acc_original, acc_quantized, acc_stddev,
/// quant_error_{unscaled|scaled}, pairs.
pub fn cmd_real_classify(args: &RealClassifyArgs) -> Result<RealClassifyOutput> {
    if args.gamma_grid.is_empty() {
        return Err(Error::Usage("--gamma-grid must be nonempty".into()));
    }
    if args
        .gamma_grid
        .windows(2)
        .any(|w| w[0] > w[1])
    {
        return Err(Error::Usage("--gamma-grid must be sorted ascending".into()));
    }
    if args.kind == QuantKind::Ternary && args.gamma_grid[0] < 0.0 {
        return Err(Error::Usage(
            "ternary thresholds must be >= 0; gamma values must be nonnegative".into(),
        ));
    }

    let mut warnings = Vec::new();
    let data = LabeledDataset::read_csv_path(&args.path, args.header)?;
    let standardized = standardize_dataset(&data);
    for &j in &standardized.constant_dims {
        warnings.push(format!("dimension {j} is constant; standardized to zeros"));
    }
    let data = standardized.data;

    let classes = data.class_labels();
    if classes.len() < 2 {
        return Err(Error::Usage(format!(
            "need at least two classes, found {}",
            classes.len()
        )));
    }

    // Canonical pair list, then a seeded partial shuffle when sampling.
    let mut all_pairs = Vec::new();
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            all_pairs.push((classes[i], classes[j]));
        }
    }
    let requested = args
        .pairs
        .unwrap_or_else(|| DEFAULT_MAX_PAIRS.min(all_pairs.len()));
    if requested == 0 {
        return Err(Error::Usage("--pairs must be >= 1".into()));
    }
    let count = requested.min(all_pairs.len());
    if count < all_pairs.len() {
        let mut rng = unit_rng(args.seed, PAIR_STREAM);
        for i in (1..all_pairs.len()).rev() {
            let j = rand::Rng::random_range(&mut rng, 0..=i);
            all_pairs.swap(i, j);
        }
    }
    let sampled = &all_pairs[..count];

    // Pairs must leave room for 2k samples per class.
    let min_per_class = 2 * args.classifier.k();
    let mut kept = Vec::new();
    for &(a, b) in sampled {
        let na = data.rows_with_label(a).len();
        let nb = data.rows_with_label(b).len();
        if na < min_per_class || nb < min_per_class {
            warnings.push(format!(
                "pair ({a}, {b}) skipped: classes have {na} and {nb} samples, need {min_per_class}"
            ));
        } else {
            kept.push((a, b));
        }
    }
    if kept.is_empty() {
        return Err(Error::Usage(
            "every sampled class pair was too small to classify".into(),
        ));
    }

    // Eta over all vectors participating in the run.
    let mut participating: Vec<usize> = Vec::new();
    for &(a, b) in &kept {
        participating.extend(data.rows_with_label(a));
        participating.extend(data.rows_with_label(b));
    }
    participating.sort_unstable();
    participating.dedup();
    let union = data.select_rows(&participating)?;
    let union_flat: Vec<f64> = union.features().iter().copied().collect();
    let eta = union_flat.iter().map(|x| x.abs()).sum::<f64>() / union_flat.len() as f64;

    struct PairResult {
        acc_original: f64,
        acc_quantized: Vec<f64>,
    }

    let per_pair: Vec<PairResult> = kept
        .par_iter()
        .enumerate()
        .map(|(pair_idx, &(a, b))| -> Result<PairResult> {
            let mut rows = data.rows_with_label(a);
            rows.extend(data.rows_with_label(b));
            rows.sort_unstable();
            let subset = data.select_rows(&rows)?;
            let (train, test) = split(
                &subset,
                args.train_fraction,
                derive_seed(args.seed, 1 + pair_idx as u64),
            )?;
            let acc_original = args.classifier.evaluate(
                &train,
                &test,
                derive_seed(args.seed, 10_000 + pair_idx as u64),
            )?;
            let mut acc_quantized = Vec::with_capacity(args.gamma_grid.len());
            for &gamma in &args.gamma_grid {
                let scheme = QuantScheme::new(args.kind, gamma * eta)?;
                let q_train = LabeledDataset::new(
                    quantize_matrix(train.features(), &scheme),
                    train.labels().to_vec(),
                )?;
                let q_test = LabeledDataset::new(
                    quantize_matrix(test.features(), &scheme),
                    test.labels().to_vec(),
                )?;
                acc_quantized.push(args.classifier.evaluate(
                    &q_train,
                    &q_test,
                    derive_seed(args.seed, 20_000 + pair_idx as u64),
                )?);
            }
            Ok(PairResult {
                acc_original,
                acc_quantized,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let acc_original_mean =
        per_pair.iter().map(|p| p.acc_original).sum::<f64>() / per_pair.len() as f64;

    let mut out = format!(
        "gamma,tau,acc_original,acc_quantized,acc_stddev,{},pairs\n",
        quant_error_column(args.scaled_error)
    );
    for (gi, &gamma) in args.gamma_grid.iter().enumerate() {
        let tau = gamma * eta;
        let accs: Vec<f64> = per_pair.iter().map(|p| p.acc_quantized[gi]).collect();
        let (acc_mean, acc_std) = mean_std(&accs);
        let scheme = QuantScheme::new(args.kind, tau)?;
        let err = quantization_error(&union_flat, &scheme, args.scaled_error)?;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_sig9(gamma),
            fmt_sig9(tau),
            fmt_sig9(acc_original_mean),
            fmt_sig9(acc_mean),
            fmt_sig9(acc_std),
            fmt_sig9(err),
            per_pair.len()
        ));
    }
    Ok(RealClassifyOutput {
        csv: out,
        warnings,
        eta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate, SynthSpec};

    fn write_synth_csv(dir: &std::path::Path, classes: usize) -> PathBuf {
        // Build a small multiclass dataset by offsetting per-class copies.
        let spec = SynthSpec::new(3, 0.0, 0.8, 40, 5).unwrap();
        let base = generate(&spec);
        let mut features = base.features().clone();
        let mut labels: Vec<u32> = base.labels().to_vec();
        if classes > 2 {
            for extra in 2..classes {
                let shifted = base.features().mapv(|x| x + extra as f64);
                features.append(ndarray::Axis(0), shifted.view()).unwrap();
                labels.extend(std::iter::repeat_n(extra as u32, base.n_samples()));
            }
        }
        let data = LabeledDataset::new(features, labels).unwrap();
        let path = dir.join("real.csv");
        data.write_csv_path(&path, false).unwrap();
        path
    }

    fn base_args(path: PathBuf) -> RealClassifyArgs {
        RealClassifyArgs {
            path,
            header: false,
            gamma_grid: vec![0.2, 0.6, 1.0],
            kind: QuantKind::Ternary,
            classifier: ClassifierSpec::KnnEuclid { k: 3 },
            pairs: None,
            seed: 2,
            train_fraction: 0.8,
            scaled_error: false,
        }
    }

    #[test]
    fn runs_on_two_class_data_and_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_synth_csv(dir.path(), 2);
        let a = cmd_real_classify(&base_args(path.clone())).unwrap();
        let b = cmd_real_classify(&base_args(path)).unwrap();
        assert_eq!(a.csv, b.csv);
        assert_eq!(a.csv.lines().count(), 4);
        assert!(a.eta > 0.0);
    }

    #[test]
    fn huge_gamma_destroys_information() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_synth_csv(dir.path(), 2);
        let mut args = base_args(path);
        args.gamma_grid = vec![0.2, 1000.0];
        let out = cmd_real_classify(&args).unwrap();
        let last = out.csv.lines().last().unwrap();
        let acc_q: f64 = last.split(',').nth(3).unwrap().parse().unwrap();
        // All-zero codes: accuracy collapses to the majority-vote rate.
        assert!(acc_q <= 0.6, "accuracy {acc_q} with destroyed features");
    }

    #[test]
    fn multiclass_pairs_are_sampled() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_synth_csv(dir.path(), 4);
        let mut args = base_args(path);
        args.pairs = Some(3);
        let out = cmd_real_classify(&args).unwrap();
        let row = out.csv.lines().nth(1).unwrap();
        let pairs: usize = row.split(',').nth(6).unwrap().parse().unwrap();
        assert_eq!(pairs, 3);
    }

    #[test]
    fn rejects_single_class_input() {
        let dir = tempfile::tempdir().unwrap();
        let data = LabeledDataset::new(ndarray::array![[1.0], [2.0], [3.0]], vec![0, 0, 0]).unwrap();
        let path = dir.path().join("one.csv");
        data.write_csv_path(&path, false).unwrap();
        let args = base_args(path);
        assert!(matches!(cmd_real_classify(&args), Err(Error::Usage(_))));
    }

    #[test]
    fn constant_column_warns_but_completes() {
        let dir = tempfile::tempdir().unwrap();
        let spec = SynthSpec::new(2, 0.0, 0.8, 30, 8).unwrap();
        let base = generate(&spec);
        let mut features = base.features().clone();
        for i in 0..features.nrows() {
            features[[i, 1]] = 7.0;
        }
        let data = LabeledDataset::new(features, base.labels().to_vec()).unwrap();
        let path = dir.path().join("const.csv");
        data.write_csv_path(&path, false).unwrap();
        let out = cmd_real_classify(&base_args(path)).unwrap();
        assert!(out.warnings.iter().any(|w| w.contains("constant")));
    }
}
