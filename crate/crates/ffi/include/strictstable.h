#ifndef STRICTSTABLE_H
#define STRICTSTABLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SS_OK 0

#define SS_ERR_NULL_POINTER 1

#define SS_ERR_OUT_OF_RANGE 2

#define SS_ERR_DEGENERATE 3

#define SS_ERR_DEGENERATE_INNER 4

#define SS_ERR_DOMAIN 5

#define SS_ERR_INVALID_OPTION 6

#define SS_ERR_DIVERGENT_AT_ZERO 7

#define SS_ERR_NON_FINITE 8

#define SS_ERR_EMPTY_DATA 9

#define SS_ERR_PANIC 10

#define SS_METHOD_AUTO 0

#define SS_METHOD_CLOSED_FORM 1

#define SS_METHOD_SERIES 2

#define SS_METHOD_INTEGRAL 3

#define SS_WARN_NEAR_ALPHA_ONE 1

#define SS_WARN_NOT_CONVERGED 2

#define SS_WARN_CLAMPED 4

#define SS_WARN_BELOW_INTEGRAL_RELIABILITY 8

// A fractionally stable law.
typedef struct ss_frac_law ss_frac_law;

// A strictly stable law with its evaluation options.
typedef struct ss_law ss_law;

// One evaluated value.
typedef struct ss_result {
  double value;
  double error_estimate;
  // One of `SS_METHOD_CLOSED_FORM`, `SS_METHOD_SERIES`, `SS_METHOD_INTEGRAL`.
  int32_t method;
  // Bitwise or of `SS_WARN_*` flags.
  uint32_t warnings;
} ss_result;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on the calling thread. The pointer stays
// valid until the next failing call on the same thread.
const char *ss_last_error(void);

// Creates a law with index `alpha`, asymmetry `theta` and scale `lambda`.
//
// # Safety
// `out` must be null or valid for writes.
int32_t ss_law_new(double alpha, double theta, double lambda, struct ss_law **out);

// Releases a law; null is ignored.
//
// # Safety
// `law` must be null or come from `ss_law_new` and not be used afterwards.
void ss_law_free(struct ss_law *law);

// Sets the target absolute accuracy; `epsilon <= 0` restores the default.
//
// # Safety
// `law` must be null or a live handle.
int32_t ss_law_set_epsilon(struct ss_law *law, double epsilon);

// Forces an evaluation route, one of the `SS_METHOD_*` constants.
//
// # Safety
// `law` must be null or a live handle.
int32_t ss_law_set_method(struct ss_law *law, int32_t method);

// Density at `x`.
//
// # Safety
// `law` must be a live handle and `out` valid for writes.
int32_t ss_pdf(const struct ss_law *law, double x, struct ss_result *out);

// Distribution function at `x`.
//
// # Safety
// `law` must be a live handle and `out` valid for writes.
int32_t ss_cdf(const struct ss_law *law, double x, struct ss_result *out);

// Densities at `n` points; stops at the first failure.
//
// # Safety
// `xs` must hold `n` readable values and `values` `n` writable ones.
int32_t ss_pdf_array(const struct ss_law *law, const double *xs, size_t n, double *values);

// Creates a fractionally stable law.
//
// # Safety
// `out` must be null or valid for writes.
int32_t ss_frac_law_new(double alpha,
                        double beta,
                        double theta,
                        double lambda,
                        struct ss_frac_law **out);

// Releases a fractionally stable law; null is ignored.
//
// # Safety
// `law` must be null or come from `ss_frac_law_new` and not be used afterwards.
void ss_frac_law_free(struct ss_frac_law *law);

// Fractionally stable density at `x` with absolute tolerance `tol`.
//
// # Safety
// `law` must be a live handle and `out` valid for writes.
int32_t ss_frac_pdf(const struct ss_frac_law *law, double x, double tol, struct ss_result *out);

// Log-likelihood of `n` observations.
//
// # Safety
// `data` must hold `n` readable values and `out` be valid for writes.
int32_t ss_frac_log_likelihood(const struct ss_frac_law *law,
                               const double *data,
                               size_t n,
                               double tol,
                               double *out);

// Series threshold: the largest `|x|` at which `n` terms of the density
// expansion meet `epsilon`.
//
// # Safety
// `out` must be valid for writes.
int32_t ss_threshold_pdf(double alpha, double epsilon, size_t n, double *out);

// Series threshold of the distribution-function expansion.
//
// # Safety
// `out` must be valid for writes.
int32_t ss_threshold_cdf(double alpha, double epsilon, size_t n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRICTSTABLE_H */
