//! Command-line harness for threshold-quantization experiments.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quantdisc::harness::{
    cmd_emit_plots, cmd_mc_validate, cmd_real_classify, cmd_solve, cmd_synth_classify,
    cmd_theory_sweep, ClassifierSpec, RealClassifyArgs, SolveArgs, SolveInput, SynthClassifyArgs,
    TauGrid,
};
use quantdisc::solver::SolverConfig;
use quantdisc::QuantKind;

#[derive(Parser)]
#[command(
    name = "quantdisc",
    about = "Threshold quantization vs. feature discrimination: sweeps, Monte-Carlo validation, solvers, and classification experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Binary,
    Ternary,
}

impl From<KindArg> for QuantKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Binary => QuantKind::Binary,
            KindArg::Ternary => QuantKind::Ternary,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifierArg {
    KnnEuclid,
    KnnCosine,
    Svm,
}

impl ClassifierArg {
    fn spec(self, k: usize) -> ClassifierSpec {
        match self {
            ClassifierArg::KnnEuclid => ClassifierSpec::KnnEuclid { k },
            ClassifierArg::KnnCosine => ClassifierSpec::KnnCosine { k },
            ClassifierArg::Svm => ClassifierSpec::Svm,
        }
    }
}

#[derive(Args)]
struct GridArgs {
    /// Smallest threshold on the grid.
    #[arg(long, allow_hyphen_values = true)]
    tau_min: f64,
    /// Largest threshold on the grid.
    #[arg(long, allow_hyphen_values = true)]
    tau_max: f64,
    /// Grid step.
    #[arg(long, default_value_t = 0.01)]
    tau_step: f64,
}

impl GridArgs {
    fn grid(&self) -> quantdisc::Result<TauGrid> {
        TauGrid::new(self.tau_min, self.tau_max, self.tau_step)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the certificate condition and closed-form discrimination on a threshold grid.
    TheorySweep {
        /// Class mean magnitude, in (0, 1); the variance is 1 - mu^2.
        #[arg(long)]
        mu: f64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        grid: GridArgs,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Estimate discrimination from sampled data across a threshold grid.
    McValidate {
        #[arg(long)]
        mu: f64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        grid: GridArgs,
        /// Samples per class.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify synthetic data, original vs quantized, over a threshold grid.
    SynthClassify {
        /// First-dimension mean magnitude, in (0, 1).
        #[arg(long)]
        mu: f64,
        /// Exponential decay rate of the per-dimension means.
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        #[arg(long, default_value_t = 1)]
        dims: usize,
        /// Samples per class.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = ClassifierArg::KnnEuclid)]
        classifier: ClassifierArg,
        /// Neighbour count for the KNN classifiers.
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        repeats: usize,
        #[arg(long, default_value_t = 0.8)]
        train_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report the scaled quantization error instead of the unscaled one.
        #[arg(long, default_value_t = false)]
        scaled_mqe: bool,
        /// Flip each dimension's mean sign with probability 1/2.
        #[arg(long, default_value_t = false)]
        random_signs: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve for an enhancing threshold (theory mode via --mu, empirical mode via --input).
    Solve {
        #[arg(long, conflicts_with = "input")]
        mu: Option<f64>,
        /// Dataset CSV path (label, then feature columns).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Input CSV starts with a header line.
        #[arg(long, default_value_t = false)]
        header: bool,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.8)]
        train_fraction: f64,
        /// Use the scaled reconstruction error in the MQE baseline.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        scaled_mqe: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Class-pair classification sweep over an ingested dataset, tau = gamma * eta.
    RealClassify {
        #[arg(long)]
        input: PathBuf,
        /// Input CSV starts with a header line.
        #[arg(long, default_value_t = false)]
        header: bool,
        /// Comma-separated gamma values, ascending.
        #[arg(long, value_delimiter = ',', required = true)]
        gamma_grid: Vec<f64>,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = ClassifierArg::KnnEuclid)]
        classifier: ClassifierArg,
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Number of class pairs to sample (default: min(45, all pairs)).
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.8)]
        train_fraction: f64,
        /// Report the scaled quantization error instead of the unscaled one.
        #[arg(long, default_value_t = false)]
        scaled_mqe: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a gnuplot script for a sweep CSV produced by the other commands.
    EmitPlots {
        #[arg(long)]
        input: PathBuf,
        /// Output script path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn write_output(text: &str, output: Option<&PathBuf>) -> quantdisc::Result<()> {
    match output {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> quantdisc::Result<()> {
    match cli.command {
        Command::TheorySweep {
            mu,
            kind,
            grid,
            output,
        } => {
            let csv = cmd_theory_sweep(mu, &grid.grid()?, kind.into())?;
            write_output(&csv, output.as_ref())
        }
        Command::McValidate {
            mu,
            kind,
            grid,
            samples,
            seed,
            output,
        } => {
            let csv = cmd_mc_validate(mu, &grid.grid()?, kind.into(), samples, seed)?;
            write_output(&csv, output.as_ref())
        }
        Command::SynthClassify {
            mu,
            lambda,
            dims,
            samples,
            kind,
            grid,
            classifier,
            k,
            repeats,
            train_fraction,
            seed,
            scaled_mqe,
            random_signs,
            output,
        } => {
            let args = SynthClassifyArgs {
                dims,
                lambda,
                mu1: mu,
                samples_per_class: samples,
                kind: kind.into(),
                grid: grid.grid()?,
                classifier: classifier.spec(k),
                repeats,
                train_fraction,
                seed,
                scaled_error: scaled_mqe,
                random_signs,
            };
            let csv = cmd_synth_classify(&args)?;
            write_output(&csv, output.as_ref())
        }
        Command::Solve {
            mu,
            input,
            header,
            kind,
            k,
            seed,
            train_fraction,
            scaled_mqe,
            output,
        } => {
            let solve_input = match (mu, input) {
                (Some(mu), None) => SolveInput::Theory { mu },
                (None, Some(path)) => SolveInput::Empirical { path, header },
                _ => {
                    return Err(quantdisc::Error::Usage(
                        "solve needs exactly one of --mu or --input".into(),
                    ))
                }
            };
            let args = SolveArgs {
                input: solve_input,
                kind: kind.into(),
                solver: SolverConfig::default(),
                k,
                seed,
                train_fraction,
                scaled_mqe,
            };
            let out = cmd_solve(&args)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            write_output(&out.csv, output.as_ref())
        }
        Command::RealClassify {
            input,
            header,
            gamma_grid,
            kind,
            classifier,
            k,
            pairs,
            seed,
            train_fraction,
            scaled_mqe,
            output,
        } => {
            let args = RealClassifyArgs {
                path: input,
                header,
                gamma_grid,
                kind: kind.into(),
                classifier: classifier.spec(k),
                pairs,
                seed,
                train_fraction,
                scaled_error: scaled_mqe,
            };
            let out = cmd_real_classify(&args)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            write_output(&out.csv, output.as_ref())
        }
        Command::EmitPlots { input, output } => {
            let script = cmd_emit_plots(&input)?;
            write_output(&script, output.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
