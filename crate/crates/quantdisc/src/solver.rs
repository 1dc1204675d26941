//! Gradient-descent threshold solvers with Armijo backtracking, plus the
//! minimum-quantization-error (MQE) baseline.
//!
//! The objectives are the negated certificate conditions, so a minimizer
//! with a negative objective value is a threshold that provably increases
//! discrimination. Ternary iterates are projected onto [0, +inf).

use crate::discrim::{binary_alpha_beta, binary_condition, ternary_alpha_beta, ternary_condition};
use crate::error::Error;
use crate::gaussian::{norm_pdf, ClassPairModel};
use crate::quant::QuantKind;
use crate::Result;

/// Maximum number of backtracking shrinks per line search.
const MAX_SHRINKS: usize = 60;

/// Armijo gradient-descent configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Armijo sufficient-decrease constant, in (0, 1).
    pub armijo_c: f64,
    /// Stop when the (projected) gradient magnitude falls below this.
    pub grad_tol: f64,
    pub max_iters: usize,
    /// Initial threshold. A second start at 0.5 * sigma is always tried too.
    pub tau0: f64,
    /// Initial trial step size for each line search.
    pub step_init: f64,
    /// Backtracking factor, in (0, 1).
    pub step_shrink: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            armijo_c: 1e-3,
            grad_tol: 1e-12,
            max_iters: 10_000,
            tau0: 0.0,
            step_init: 1.0,
            step_shrink: 0.5,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.armijo_c > 0.0 && self.armijo_c < 1.0) {
            return Err(Error::invalid("armijo_c", "must lie in (0, 1)"));
        }
        if !(self.grad_tol > 0.0 && self.grad_tol.is_finite()) {
            return Err(Error::invalid("grad_tol", "must be > 0"));
        }
        if self.max_iters == 0 {
            return Err(Error::invalid("max_iters", "must be >= 1"));
        }
        if !self.tau0.is_finite() {
            return Err(Error::NonFinite("tau0"));
        }
        if !(self.step_init > 0.0 && self.step_init.is_finite()) {
            return Err(Error::invalid("step_init", "must be > 0"));
        }
        if !(self.step_shrink > 0.0 && self.step_shrink < 1.0) {
            return Err(Error::invalid("step_shrink", "must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Outcome of a threshold solve.
#[derive(Debug, Clone, Copy)]
pub struct SolverResult {
    pub tau_star: f64,
    /// Objective value g(tau_star); negative means the certificate holds.
    pub objective_value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub condition_satisfied: bool,
}

/// One accepted Armijo step, for descent-property checking.
#[derive(Debug, Clone, Copy)]
pub struct ArmijoStep {
    pub tau_from: f64,
    pub tau_to: f64,
    /// Accepted step size gamma.
    pub step: f64,
    /// Gradient at tau_from.
    pub grad: f64,
    pub obj_from: f64,
    pub obj_to: f64,
}

/// Binary objective: the negated binary certificate.
pub fn binary_objective(model: &ClassPairModel, tau: f64) -> f64 {
    -binary_condition(model, tau)
}

/// Analytic derivative of the binary objective in tau.
pub fn binary_gradient(model: &ClassPairModel, tau: f64) -> f64 {
    let mu = model.mu();
    let sigma = model.sigma();
    let mu2 = mu * mu;
    let (_, beta) = binary_alpha_beta(model, tau);
    let alpha_d = norm_pdf((tau - mu) / sigma) / sigma;
    let beta_d = norm_pdf((tau + mu) / sigma) / sigma;
    let radical = (mu2 + 4.0 * beta * (1.0 - beta)).sqrt();
    -((1.0 - mu2) / (1.0 + mu2)) * beta_d
        + alpha_d
        + mu * (2.0 * beta_d - 4.0 * beta * beta_d) / ((1.0 + mu2) * radical)
}

/// Ternary objective: the negated ternary certificate.
pub fn ternary_objective(model: &ClassPairModel, tau: f64) -> f64 {
    -ternary_condition(model, tau)
}

/// Analytic derivative of the ternary objective in tau.
pub fn ternary_gradient(model: &ClassPairModel, tau: f64) -> f64 {
    let mu = model.mu();
    let sigma = model.sigma();
    let (_, beta) = ternary_alpha_beta(model, tau);
    let alpha_d = -norm_pdf((-tau - mu) / sigma) / sigma;
    let beta_d = -norm_pdf((-tau + mu) / sigma) / sigma;
    -beta_d + alpha_d + 2.0 * mu * beta_d / (mu * mu + 8.0 * beta).sqrt()
}

fn objective_of(kind: QuantKind) -> fn(&ClassPairModel, f64) -> f64 {
    match kind {
        QuantKind::Binary => binary_objective,
        QuantKind::Ternary => ternary_objective,
    }
}

fn gradient_of(kind: QuantKind) -> fn(&ClassPairModel, f64) -> f64 {
    match kind {
        QuantKind::Binary => binary_gradient,
        QuantKind::Ternary => ternary_gradient,
    }
}

struct Descent {
    tau: f64,
    objective: f64,
    iterations: usize,
    converged: bool,
}

fn descend(
    model: &ClassPairModel,
    kind: QuantKind,
    cfg: &SolverConfig,
    tau0: f64,
    trace: &mut Vec<ArmijoStep>,
) -> Descent {
    let project = kind == QuantKind::Ternary;
    let objective = objective_of(kind);
    let gradient = gradient_of(kind);

    let mut tau = if project { tau0.max(0.0) } else { tau0 };
    let mut obj = objective(model, tau);

    for it in 0..cfg.max_iters {
        let grad = gradient(model, tau);
        // At the boundary the projected gradient vanishes when the descent
        // direction points out of the feasible set.
        let projected_grad = if project && tau <= 0.0 && grad > 0.0 {
            0.0
        } else {
            grad
        };
        if projected_grad.abs() < cfg.grad_tol {
            return Descent {
                tau,
                objective: obj,
                iterations: it,
                converged: true,
            };
        }

        let mut gamma = cfg.step_init;
        let mut accepted = None;
        for _ in 0..MAX_SHRINKS {
            let mut candidate = tau - gamma * grad;
            if project {
                candidate = candidate.max(0.0);
            }
            let candidate_obj = objective(model, candidate);
            if candidate_obj <= obj - cfg.armijo_c * gamma * grad * grad {
                accepted = Some((candidate, candidate_obj, gamma));
                break;
            }
            gamma *= cfg.step_shrink;
        }

        match accepted {
            Some((next_tau, next_obj, gamma)) => {
                trace.push(ArmijoStep {
                    tau_from: tau,
                    tau_to: next_tau,
                    step: gamma,
                    grad,
                    obj_from: obj,
                    obj_to: next_obj,
                });
                tau = next_tau;
                obj = next_obj;
            }
            None => {
                // No step satisfied the Armijo test: return the best iterate.
                return Descent {
                    tau,
                    objective: obj,
                    iterations: it,
                    converged: false,
                };
            }
        }
    }

    Descent {
        tau,
        objective: obj,
        iterations: cfg.max_iters,
        converged: false,
    }
}

/// Minimizes the certificate objective by projected Armijo gradient descent.
///
/// Two starts are used, `cfg.tau0` and `0.5 * sigma`, and the lower-objective
/// result is returned; the extra start escapes the near-symmetric plateau
/// around zero when it is not the minimum.
pub fn solve_threshold(
    model: &ClassPairModel,
    kind: QuantKind,
    cfg: &SolverConfig,
) -> Result<SolverResult> {
    solve_threshold_traced(model, kind, cfg).map(|(result, _)| result)
}

/// As [`solve_threshold`], additionally returning every accepted Armijo step
/// (across both starts).
pub fn solve_threshold_traced(
    model: &ClassPairModel,
    kind: QuantKind,
    cfg: &SolverConfig,
) -> Result<(SolverResult, Vec<ArmijoStep>)> {
    cfg.validate()?;
    let mut trace = Vec::new();

    let mut starts = vec![cfg.tau0];
    let second = 0.5 * model.sigma();
    if (second - cfg.tau0).abs() > 1e-12 {
        starts.push(second);
    }

    let mut best: Option<Descent> = None;
    for &tau0 in &starts {
        let run = descend(model, kind, cfg, tau0, &mut trace);
        best = match best {
            None => Some(run),
            Some(cur) if run.objective < cur.objective => Some(run),
            Some(cur) => Some(cur),
        };
    }
    let best = best.expect("at least one start");

    Ok((
        SolverResult {
            tau_star: best.tau,
            objective_value: best.objective,
            iterations: best.iterations,
            converged: best.converged,
            condition_satisfied: best.objective < 0.0,
        },
        trace,
    ))
}

/// Exact minimizer of the empirical quantization error over thresholds.
///
/// The error is piecewise constant in tau with breakpoints at the sample
/// values (binary) or absolute sample values (ternary), so the minimum over
/// the finite set of realizable split points is the exact minimum. Returns
/// the smallest minimizing candidate. All-equal inputs are degenerate and
/// yield 0.
pub fn solve_mqe_threshold(samples: &[f64], kind: QuantKind, scaled: bool) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("solve_mqe_threshold"));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("sample"));
    }

    let keys: Vec<f64> = match kind {
        QuantKind::Binary => {
            let mut v = samples.to_vec();
            v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite"));
            v
        }
        QuantKind::Ternary => {
            let mut v: Vec<f64> = samples.iter().map(|x| x.abs()).collect();
            v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite"));
            v
        }
    };
    let n = keys.len();
    if keys[0] == keys[n - 1] {
        // Degenerate: a single distinct magnitude cannot be split.
        return Ok(0.0);
    }

    // Prefix sums over the sorted order. For split k the head 0..k maps to
    // code 0 and the tail k..n maps to code 1 (binary) or sign (ternary);
    // in both cases v * q = key and q * q = 1 on the tail.
    let mut cum_key = vec![0.0; n + 1];
    let mut cum_sq = vec![0.0; n + 1];
    for (i, &key) in keys.iter().enumerate() {
        cum_key[i + 1] = cum_key[i] + key;
        cum_sq[i + 1] = cum_sq[i] + key * key;
    }
    let total_key = cum_key[n];
    let total_sq = cum_sq[n];
    let nf = n as f64;

    let candidate_tau = |k: usize| -> Option<f64> {
        if k == 0 {
            match kind {
                QuantKind::Binary => Some(keys[0] - 1.0),
                // tau must stay >= 0 and below the smallest magnitude.
                QuantKind::Ternary => (keys[0] > 0.0).then(|| keys[0] / 2.0),
            }
        } else if k == n || keys[k] > keys[k - 1] {
            Some(keys[k - 1])
        } else {
            None
        }
    };

    let mut best_tau = f64::NAN;
    let mut best_err = f64::INFINITY;
    for k in 0..=n {
        let Some(tau) = candidate_tau(k) else {
            continue;
        };
        let cnt = (n - k) as f64;
        let tail_key = total_key - cum_key[k];
        let err = if scaled {
            let s = if cnt == 0.0 {
                0.0
            } else {
                (tail_key / cnt).max(0.0)
            };
            (total_sq - 2.0 * s * tail_key + s * s * cnt) / nf
        } else {
            (cum_sq[k] + (total_sq - cum_sq[k]) - 2.0 * tail_key + cnt) / nf
        };
        if err < best_err {
            best_err = err;
            best_tau = tau;
        }
    }
    Ok(best_tau)
}
