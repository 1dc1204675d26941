//! C ABI for the quantdisc library.
//!
//! Conventions: every fallible function returns a status code and writes its
//! result through out-pointers; models are opaque handles created and
//! destroyed here. Passing a null pointer yields `QD_ERR_NULL_POINTER`, never
//! a crash. The header `include/quantdisc.h` is generated by cbindgen at
//! build time.

use std::ffi::c_int;
use std::panic::{catch_unwind, AssertUnwindSafe};

use quantdisc::solver::{solve_mqe_threshold, solve_threshold, SolverConfig};
use quantdisc::{
    discrim, empirical_discrimination, quantization_error, quantize_scalar, std_normal_cdf,
    std_normal_pdf, standardize_params, ClassPairModel, Error, QuantKind, QuantScheme,
    RawClassParams,
};

/// Success.
pub const QD_OK: c_int = 0;
/// A required pointer argument was null.
pub const QD_ERR_NULL_POINTER: c_int = 1;
/// An argument was out of range or not finite.
pub const QD_ERR_INVALID_ARGUMENT: c_int = 2;
/// The two classes coincide (no discriminating model exists).
pub const QD_ERR_DEGENERATE: c_int = 3;
/// The input carried too few samples.
pub const QD_ERR_TOO_FEW_SAMPLES: c_int = 4;
/// Unexpected internal failure.
pub const QD_ERR_INTERNAL: c_int = 5;

/// Quantizer family selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum QdQuantKind {
    QdBinary = 0,
    QdTernary = 1,
}

impl From<QdQuantKind> for QuantKind {
    fn from(k: QdQuantKind) -> Self {
        match k {
            QdQuantKind::QdBinary => QuantKind::Binary,
            QdQuantKind::QdTernary => QuantKind::Ternary,
        }
    }
}

/// Armijo solver settings; obtain defaults from `qd_solver_config_default`.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct QdSolverConfig {
    pub armijo_c: f64,
    pub grad_tol: f64,
    pub max_iters: u64,
    pub tau0: f64,
    pub step_init: f64,
    pub step_shrink: f64,
}

impl From<QdSolverConfig> for SolverConfig {
    fn from(c: QdSolverConfig) -> Self {
        SolverConfig {
            armijo_c: c.armijo_c,
            grad_tol: c.grad_tol,
            max_iters: c.max_iters as usize,
            tau0: c.tau0,
            step_init: c.step_init,
            step_shrink: c.step_shrink,
        }
    }
}

/// Solver outcome.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct QdSolverResult {
    pub tau_star: f64,
    pub objective_value: f64,
    pub iterations: u64,
    pub converged: bool,
    pub condition_satisfied: bool,
}

/// Opaque two-class model handle (N(+mu, sigma^2) vs N(-mu, sigma^2)).
pub struct QdModel {
    inner: ClassPairModel,
}

fn status_of(err: &Error) -> c_int {
    match err {
        Error::DegenerateClasses => QD_ERR_DEGENERATE,
        Error::EmptyInput(_) | Error::TooFewSamples { .. } => QD_ERR_TOO_FEW_SAMPLES,
        _ => QD_ERR_INVALID_ARGUMENT,
    }
}

fn guarded(f: impl FnOnce() -> c_int) -> c_int {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(QD_ERR_INTERNAL)
}

/// Writes `value` through `out`, or reports a null pointer.
unsafe fn write_out<T>(out: *mut T, value: T) -> c_int {
    if out.is_null() {
        return QD_ERR_NULL_POINTER;
    }
    unsafe { out.write(value) };
    QD_OK
}

unsafe fn model_ref<'a>(model: *const QdModel) -> Option<&'a ClassPairModel> {
    unsafe { model.as_ref() }.map(|m| &m.inner)
}

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if ptr.is_null() {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts(ptr, len) })
    }
}

/// Creates a model with the given mean magnitude and standard deviation.
#[no_mangle]
pub unsafe extern "C" fn qd_model_new(mu: f64, sigma: f64, out: *mut *mut QdModel) -> c_int {
    guarded(|| {
        if out.is_null() {
            return QD_ERR_NULL_POINTER;
        }
        match ClassPairModel::new(mu, sigma) {
            Ok(inner) => {
                let handle = Box::into_raw(Box::new(QdModel { inner }));
                unsafe { out.write(handle) };
                QD_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Creates the standardized model with sigma^2 = 1 - mu^2.
#[no_mangle]
pub unsafe extern "C" fn qd_model_standardized(mu: f64, out: *mut *mut QdModel) -> c_int {
    guarded(|| {
        if out.is_null() {
            return QD_ERR_NULL_POINTER;
        }
        match ClassPairModel::standardized(mu) {
            Ok(inner) => {
                let handle = Box::into_raw(Box::new(QdModel { inner }));
                unsafe { out.write(handle) };
                QD_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Standardizes raw two-class parameters (class means mu1, mu2 and shared
/// variance sigma2) into a model. When `out_swapped` is non-null it receives
/// whether the class roles were exchanged to make the mean positive.
#[no_mangle]
pub unsafe extern "C" fn qd_model_from_raw(
    mu1: f64,
    mu2: f64,
    sigma2: f64,
    out: *mut *mut QdModel,
    out_swapped: *mut bool,
) -> c_int {
    guarded(|| {
        if out.is_null() {
            return QD_ERR_NULL_POINTER;
        }
        let raw = match RawClassParams::new(mu1, mu2, sigma2) {
            Ok(r) => r,
            Err(e) => return status_of(&e),
        };
        match standardize_params(&raw) {
            Ok(std) => {
                if !out_swapped.is_null() {
                    unsafe { out_swapped.write(std.classes_swapped) };
                }
                let handle = Box::into_raw(Box::new(QdModel { inner: std.model }));
                unsafe { out.write(handle) };
                QD_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a model handle. Null is accepted and ignored.
#[no_mangle]
pub unsafe extern "C" fn qd_model_free(model: *mut QdModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Reads the model's mean magnitude.
#[no_mangle]
pub unsafe extern "C" fn qd_model_mu(model: *const QdModel, out: *mut f64) -> c_int {
    guarded(|| match unsafe { model_ref(model) } {
        Some(m) => unsafe { write_out(out, m.mu()) },
        None => QD_ERR_NULL_POINTER,
    })
}

/// Reads the model's standard deviation.
#[no_mangle]
pub unsafe extern "C" fn qd_model_sigma(model: *const QdModel, out: *mut f64) -> c_int {
    guarded(|| match unsafe { model_ref(model) } {
        Some(m) => unsafe { write_out(out, m.sigma()) },
        None => QD_ERR_NULL_POINTER,
    })
}

/// Standard normal CDF.
#[no_mangle]
pub unsafe extern "C" fn qd_std_normal_cdf(x: f64, out: *mut f64) -> c_int {
    guarded(|| match std_normal_cdf(x) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(e) => status_of(&e),
    })
}

/// Standard normal PDF.
#[no_mangle]
pub unsafe extern "C" fn qd_std_normal_pdf(x: f64, out: *mut f64) -> c_int {
    guarded(|| match std_normal_pdf(x) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(e) => status_of(&e),
    })
}

/// Closed-form discrimination of the original data.
#[no_mangle]
pub unsafe extern "C" fn qd_d_original(model: *const QdModel, out: *mut f64) -> c_int {
    guarded(|| match unsafe { model_ref(model) } {
        Some(m) => unsafe { write_out(out, discrim::d_original(m)) },
        None => QD_ERR_NULL_POINTER,
    })
}

fn check_scheme(kind: QdQuantKind, tau: f64) -> Result<QuantScheme, c_int> {
    QuantScheme::new(kind.into(), tau).map_err(|e| status_of(&e))
}

/// Closed-form discrimination of quantized data at the given threshold.
#[no_mangle]
pub unsafe extern "C" fn qd_d_quantized(
    model: *const QdModel,
    kind: QdQuantKind,
    tau: f64,
    out: *mut f64,
) -> c_int {
    guarded(|| {
        let Some(m) = (unsafe { model_ref(model) }) else {
            return QD_ERR_NULL_POINTER;
        };
        match check_scheme(kind, tau) {
            Ok(scheme) => {
                let v = match scheme.kind() {
                    QuantKind::Binary => discrim::d_binary(m, tau),
                    QuantKind::Ternary => discrim::d_ternary(m, tau),
                };
                unsafe { write_out(out, v) }
            }
            Err(code) => code,
        }
    })
}

/// Certificate value; positive means quantization at tau increases
/// discrimination.
#[no_mangle]
pub unsafe extern "C" fn qd_condition(
    model: *const QdModel,
    kind: QdQuantKind,
    tau: f64,
    out: *mut f64,
) -> c_int {
    guarded(|| {
        let Some(m) = (unsafe { model_ref(model) }) else {
            return QD_ERR_NULL_POINTER;
        };
        match check_scheme(kind, tau) {
            Ok(scheme) => {
                let v = match scheme.kind() {
                    QuantKind::Binary => discrim::binary_condition(m, tau),
                    QuantKind::Ternary => discrim::ternary_condition(m, tau),
                };
                unsafe { write_out(out, v) }
            }
            Err(code) => code,
        }
    })
}

/// Quantizes `len` values into codes in {-1, 0, 1}; `out` must hold `len`
/// bytes.
#[no_mangle]
pub unsafe extern "C" fn qd_quantize(
    values: *const f64,
    len: usize,
    kind: QdQuantKind,
    tau: f64,
    out: *mut i8,
) -> c_int {
    guarded(|| {
        let Some(input) = (unsafe { slice_arg(values, len) }) else {
            return QD_ERR_NULL_POINTER;
        };
        if out.is_null() {
            return QD_ERR_NULL_POINTER;
        }
        match check_scheme(kind, tau) {
            Ok(scheme) => {
                let out = unsafe { std::slice::from_raw_parts_mut(out, len) };
                for (o, &x) in out.iter_mut().zip(input) {
                    *o = quantize_scalar(x, &scheme);
                }
                QD_OK
            }
            Err(code) => code,
        }
    })
}

/// Mean squared quantization error; `scaled` selects the scale-optimal
/// variant.
#[no_mangle]
pub unsafe extern "C" fn qd_quantization_error(
    values: *const f64,
    len: usize,
    kind: QdQuantKind,
    tau: f64,
    scaled: bool,
    out: *mut f64,
) -> c_int {
    guarded(|| {
        let Some(input) = (unsafe { slice_arg(values, len) }) else {
            return QD_ERR_NULL_POINTER;
        };
        match check_scheme(kind, tau) {
            Ok(scheme) => match quantization_error(input, &scheme, scaled) {
                Ok(v) => unsafe { write_out(out, v) },
                Err(e) => status_of(&e),
            },
            Err(code) => code,
        }
    })
}

/// Empirical discrimination of two sample sets (no quantization).
#[no_mangle]
pub unsafe extern "C" fn qd_empirical_discrimination(
    xs: *const f64,
    len_x: usize,
    ys: *const f64,
    len_y: usize,
    out: *mut f64,
) -> c_int {
    guarded(|| {
        let (Some(xs), Some(ys)) =
            (unsafe { slice_arg(xs, len_x) }, unsafe { slice_arg(ys, len_y) })
        else {
            return QD_ERR_NULL_POINTER;
        };
        match empirical_discrimination(xs, ys, None) {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => status_of(&e),
        }
    })
}

/// Empirical discrimination after quantizing both sample sets.
#[no_mangle]
pub unsafe extern "C" fn qd_empirical_discrimination_quantized(
    xs: *const f64,
    len_x: usize,
    ys: *const f64,
    len_y: usize,
    kind: QdQuantKind,
    tau: f64,
    out: *mut f64,
) -> c_int {
    guarded(|| {
        let (Some(xs), Some(ys)) =
            (unsafe { slice_arg(xs, len_x) }, unsafe { slice_arg(ys, len_y) })
        else {
            return QD_ERR_NULL_POINTER;
        };
        match check_scheme(kind, tau) {
            Ok(scheme) => match empirical_discrimination(xs, ys, Some(&scheme)) {
                Ok(v) => unsafe { write_out(out, v) },
                Err(e) => status_of(&e),
            },
            Err(code) => code,
        }
    })
}

/// Fills `out` with the default solver configuration.
#[no_mangle]
pub unsafe extern "C" fn qd_solver_config_default(out: *mut QdSolverConfig) -> c_int {
    guarded(|| {
        let d = SolverConfig::default();
        unsafe {
            write_out(
                out,
                QdSolverConfig {
                    armijo_c: d.armijo_c,
                    grad_tol: d.grad_tol,
                    max_iters: d.max_iters as u64,
                    tau0: d.tau0,
                    step_init: d.step_init,
                    step_shrink: d.step_shrink,
                },
            )
        }
    })
}

/// Runs the Armijo threshold solver. `config` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn qd_solve_threshold(
    model: *const QdModel,
    kind: QdQuantKind,
    config: *const QdSolverConfig,
    out: *mut QdSolverResult,
) -> c_int {
    guarded(|| {
        let Some(m) = (unsafe { model_ref(model) }) else {
            return QD_ERR_NULL_POINTER;
        };
        let cfg = match unsafe { config.as_ref() } {
            Some(c) => SolverConfig::from(*c),
            None => SolverConfig::default(),
        };
        match solve_threshold(m, kind.into(), &cfg) {
            Ok(r) => unsafe {
                write_out(
                    out,
                    QdSolverResult {
                        tau_star: r.tau_star,
                        objective_value: r.objective_value,
                        iterations: r.iterations as u64,
                        converged: r.converged,
                        condition_satisfied: r.condition_satisfied,
                    },
                )
            },
            Err(e) => status_of(&e),
        }
    })
}

/// Threshold minimizing the empirical quantization error of `values`.
#[no_mangle]
pub unsafe extern "C" fn qd_solve_mqe_threshold(
    values: *const f64,
    len: usize,
    kind: QdQuantKind,
    scaled: bool,
    out_tau: *mut f64,
) -> c_int {
    guarded(|| {
        let Some(input) = (unsafe { slice_arg(values, len) }) else {
            return QD_ERR_NULL_POINTER;
        };
        match solve_mqe_threshold(input, kind.into(), scaled) {
            Ok(v) => unsafe { write_out(out_tau, v) },
            Err(e) => status_of(&e),
        }
    })
}
