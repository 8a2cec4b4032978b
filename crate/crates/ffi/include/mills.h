#ifndef MILLS_H
#define MILLS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum MillsStatus {
  MILLS_STATUS_OK = 0,
  // Argument outside the mathematical domain.
  MILLS_STATUS_DOMAIN = 1,
  // Bound evaluated outside its proven validity interval without `force`.
  MILLS_STATUS_VALIDITY = 2,
  // No sign change on the search interval.
  MILLS_STATUS_BRACKET = 3,
  // Target not attained by the bound on its validity interval.
  MILLS_STATUS_UNATTAINABLE = 4,
  MILLS_STATUS_NO_CONVERGENCE = 5,
  // Invalid parameters (ranges, identifiers, counts).
  MILLS_STATUS_CONFIG = 6,
  MILLS_STATUS_NULL_POINTER = 7,
  MILLS_STATUS_PANIC = 8,
} MillsStatus;

// Bound identifiers, matching the catalog order.
enum MillsBoundId
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  MILLS_BOUND_ID_GORDON_LOWER = 0,
  MILLS_BOUND_ID_GORDON_UPPER = 1,
  MILLS_BOUND_ID_BS_LOWER = 2,
  MILLS_BOUND_ID_BS_UPPER = 3,
  MILLS_BOUND_ID_THM3_LOWER = 4,
  MILLS_BOUND_ID_THM3_UPPER = 5,
  MILLS_BOUND_ID_COROLLARY_LOWER = 6,
  MILLS_BOUND_ID_COROLLARY_UPPER = 7,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum MillsBoundId MillsBoundId;
#else
typedef uint32_t MillsBoundId;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

// Closed-form inverse estimates.
enum MillsEstimate
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  MILLS_ESTIMATE_LOW1 = 0,
  MILLS_ESTIMATE_LOW2 = 1,
  MILLS_ESTIMATE_UPP = 2,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum MillsEstimate MillsEstimate;
#else
typedef uint32_t MillsEstimate;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

// Opaque comparison row.
typedef struct MillsComparisonRow MillsComparisonRow;

// Opaque conjecture report.
typedef struct MillsConjectureReport MillsConjectureReport;

// Catalog metadata for one bound. `name` points to static storage.
typedef struct MillsBoundInfo {
  uint32_t id;
  // 0 for a lower bound, 1 for an upper bound.
  uint32_t side;
  double validity_lo;
  double validity_hi;
  bool lo_open;
  bool hi_open;
  const char *name;
} MillsBoundInfo;

// One bound inside a comparison row.
typedef struct MillsBoundEntry {
  double value;
  double log_value;
  double relative_error;
  bool in_validity;
  bool holds;
} MillsBoundEntry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or an empty string.
// Valid until the next call into this library from the same thread.
const char *mills_last_error_message(void);

// Mill's ratio `R(x)` for `0 <= x <= 40`.
enum MillsStatus mills_mills_ratio(double x, double *out);

// Tail integral `M(x)`; either out-pointer may be null.
enum MillsStatus mills_tail_integral(double x, double *out_linear, double *out_log);

// `Q(x)`; either out-pointer may be null.
enum MillsStatus mills_q_value(double x, double *out_linear, double *out_log);

// Exact inverse Q-function for `1e-300 <= alpha <= 0.5`.
enum MillsStatus mills_inverse_q(double alpha, double *out);

size_t mills_bound_count(void);

enum MillsStatus mills_bound_info(uint32_t bound, struct MillsBoundInfo *out);

// Value of a bound at `x`; `force` allows evaluation outside the proven interval.
enum MillsStatus mills_evaluate_bound(uint32_t bound, double x, bool force, double *out);

// Compares `M(x)` with `count` bounds. The row must be released with
// [`mills_comparison_free`].
//
// # Safety
// `bounds` must point to `count` readable `uint32_t` values.
enum MillsStatus mills_compare_at(double x,
                                  const uint32_t *bounds,
                                  size_t count,
                                  struct MillsComparisonRow **out);

// # Safety
// `row` must be a live handle from [`mills_compare_at`].
enum MillsStatus mills_comparison_reference(const struct MillsComparisonRow *row, double *out);

// # Safety
// `row` must be a live handle from [`mills_compare_at`].
enum MillsStatus mills_comparison_ordering_ok(const struct MillsComparisonRow *row, bool *out);

// Entry for `bound`; fails with `MILLS_STATUS_CONFIG` if the bound was not requested.
//
// # Safety
// `row` must be a live handle from [`mills_compare_at`].
enum MillsStatus mills_comparison_entry(const struct MillsComparisonRow *row,
                                        uint32_t bound,
                                        struct MillsBoundEntry *out);

// # Safety
// `row` must be null or a handle from [`mills_compare_at`] not yet freed.
void mills_comparison_free(struct MillsComparisonRow *row);

enum MillsStatus mills_empirical_crossover(uint32_t bound,
                                           double lo,
                                           double hi,
                                           double tol,
                                           double *out);

enum MillsStatus mills_identity_residual(double x, double *out);

enum MillsStatus mills_asymptotic_ratio(double x, double *out);

double mills_crossover_constant(void);

enum MillsStatus mills_binary_entropy(double p, double *out);

// Closed-form inverse estimate `which` (a `MillsEstimate`).
enum MillsStatus mills_estimate(uint32_t which, double alpha, double *out);

// Certified one-sided bound on the inverse Q-function.
enum MillsStatus mills_invert_bound(uint32_t bound, double alpha, double *out);

// Runs the conjecture scan. The report must be released with [`mills_report_free`].
enum MillsStatus mills_conjecture_scan(double alpha_min,
                                       double alpha_max,
                                       size_t points_per_decade,
                                       struct MillsConjectureReport **out);

// # Safety
// `report` must be a live handle from [`mills_conjecture_scan`].
enum MillsStatus mills_report_grid_points(const struct MillsConjectureReport *report, size_t *out);

// # Safety
// `report` must be a live handle from [`mills_conjecture_scan`].
enum MillsStatus mills_report_holds_at(const struct MillsConjectureReport *report,
                                       uint32_t which,
                                       size_t *out);

// # Safety
// `report` must be a live handle from [`mills_conjecture_scan`].
enum MillsStatus mills_report_violation_count(const struct MillsConjectureReport *report,
                                              uint32_t which,
                                              size_t *out);

// Violation `index` of estimate `which`; any out-pointer may be null.
//
// # Safety
// `report` must be a live handle from [`mills_conjecture_scan`].
enum MillsStatus mills_report_violation(const struct MillsConjectureReport *report,
                                        uint32_t which,
                                        size_t index,
                                        double *out_alpha,
                                        double *out_estimate,
                                        double *out_reference);

// The report as pretty-printed JSON, or null on failure. Release with
// [`mills_string_free`].
//
// # Safety
// `report` must be a live handle from [`mills_conjecture_scan`].
char *mills_report_to_json(const struct MillsConjectureReport *report);

// # Safety
// `report` must be null or a handle from [`mills_conjecture_scan`] not yet freed.
void mills_report_free(struct MillsConjectureReport *report);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void mills_string_free(char *s);

// Runs the invariant suite on `grid_points` abscissae and stores the
// process-style exit code (0 all hold, 1 violation) in `out_exit_code`.
enum MillsStatus mills_verify(size_t grid_points, int32_t *out_exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MILLS_H */
