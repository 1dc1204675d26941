#ifndef QUANTDISC_H
#define QUANTDISC_H

/* Generated by cbindgen from quantdisc-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define QD_OK 0

/**
 * A required pointer argument was null.
 */
#define QD_ERR_NULL_POINTER 1

/**
 * An argument was out of range or not finite.
 */
#define QD_ERR_INVALID_ARGUMENT 2

/**
 * The two classes coincide (no discriminating model exists).
 */
#define QD_ERR_DEGENERATE 3

/**
 * The input carried too few samples.
 */
#define QD_ERR_TOO_FEW_SAMPLES 4

/**
 * Unexpected internal failure.
 */
#define QD_ERR_INTERNAL 5

/**
 * Quantizer family selector.
 */
typedef enum {
  QD_BINARY = 0,
  QD_TERNARY = 1,
} QdQuantKind;

/**
 * Opaque two-class model handle (N(+mu, sigma^2) vs N(-mu, sigma^2)).
 */
typedef struct QdModel QdModel;

/**
 * Armijo solver settings; obtain defaults from `qd_solver_config_default`.
 */
typedef struct {
  double armijo_c;
  double grad_tol;
  uint64_t max_iters;
  double tau0;
  double step_init;
  double step_shrink;
} QdSolverConfig;

/**
 * Solver outcome.
 */
typedef struct {
  double tau_star;
  double objective_value;
  uint64_t iterations;
  bool converged;
  bool condition_satisfied;
} QdSolverResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a model with the given mean magnitude and standard deviation.
 */
int qd_model_new(double mu, double sigma, QdModel **out);

/**
 * Creates the standardized model with sigma^2 = 1 - mu^2.
 */
int qd_model_standardized(double mu, QdModel **out);

/**
 * Standardizes raw two-class parameters (class means mu1, mu2 and shared
 * variance sigma2) into a model. When `out_swapped` is non-null it receives
 * whether the class roles were exchanged to make the mean positive.
 */
int qd_model_from_raw(double mu1, double mu2, double sigma2, QdModel **out, bool *out_swapped);

/**
 * Releases a model handle. Null is accepted and ignored.
 */
void qd_model_free(QdModel *model);

/**
 * Reads the model's mean magnitude.
 */
int qd_model_mu(const QdModel *model, double *out);

/**
 * Reads the model's standard deviation.
 */
int qd_model_sigma(const QdModel *model, double *out);

/**
 * Standard normal CDF.
 */
int qd_std_normal_cdf(double x, double *out);

/**
 * Standard normal PDF.
 */
int qd_std_normal_pdf(double x, double *out);

/**
 * Closed-form discrimination of the original data.
 */
int qd_d_original(const QdModel *model, double *out);

/**
 * Closed-form discrimination of quantized data at the given threshold.
 */
int qd_d_quantized(const QdModel *model, QdQuantKind kind, double tau, double *out);

/**
 * Certificate value; positive means quantization at tau increases
 * discrimination.
 */
int qd_condition(const QdModel *model, QdQuantKind kind, double tau, double *out);

/**
 * Quantizes `len` values into codes in {-1, 0, 1}; `out` must hold `len`
 * bytes.
 */
int qd_quantize(const double *values, uintptr_t len, QdQuantKind kind, double tau, int8_t *out);

/**
 * Mean squared quantization error; `scaled` selects the scale-optimal
 * variant.
 */
int qd_quantization_error(const double *values,
                          uintptr_t len,
                          QdQuantKind kind,
                          double tau,
                          bool scaled,
                          double *out);

/**
 * Empirical discrimination of two sample sets (no quantization).
 */
int qd_empirical_discrimination(const double *xs,
                                uintptr_t len_x,
                                const double *ys,
                                uintptr_t len_y,
                                double *out);

/**
 * Empirical discrimination after quantizing both sample sets.
 */
int qd_empirical_discrimination_quantized(const double *xs,
                                          uintptr_t len_x,
                                          const double *ys,
                                          uintptr_t len_y,
                                          QdQuantKind kind,
                                          double tau,
                                          double *out);

/**
 * Fills `out` with the default solver configuration.
 */
int qd_solver_config_default(QdSolverConfig *out);

/**
 * Runs the Armijo threshold solver. `config` may be null for defaults.
 */
int qd_solve_threshold(const QdModel *model,
                       QdQuantKind kind,
                       const QdSolverConfig *config,
                       QdSolverResult *out);

/**
 * Threshold minimizing the empirical quantization error of `values`.
 */
int qd_solve_mqe_threshold(const double *values,
                           uintptr_t len,
                           QdQuantKind kind,
                           bool scaled,
                           double *out_tau);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUANTDISC_H */
