#ifndef ISOLAB_H
#define ISOLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum IsolabStatus {
  ISOLAB_STATUS_OK = 0,
  ISOLAB_STATUS_INVALID_INPUT = 1,
  ISOLAB_STATUS_PRECONDITION = 2,
  ISOLAB_STATUS_DIVISION_BY_ZERO = 3,
  ISOLAB_STATUS_PARSE = 4,
  ISOLAB_STATUS_INSUFFICIENT_ORDER = 5,
  ISOLAB_STATUS_NUMERICAL = 6,
  ISOLAB_STATUS_IO = 7,
  ISOLAB_STATUS_NULL_POINTER = 8,
  ISOLAB_STATUS_UTF8 = 9,
  ISOLAB_STATUS_PANIC = 10,
} IsolabStatus;

// An algebraic Garnier solution.
typedef struct IsolabGarnierSolution IsolabGarnierSolution;

// A computed period matrix with its checks.
typedef struct IsolabPeriodReport IsolabPeriodReport;

// A Painleve VI solution family.
typedef struct IsolabPviFamily IsolabPviFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *isolab_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void isolab_string_free(char *s);

// Theorem 5 solution for `n` not divisible by 3.
//
// # Safety
// `out` must be a valid pointer.
enum IsolabStatus isolab_pvi_thm5(int64_t n, struct IsolabPviFamily **out);

// Theorem 6 one-parameter family for negative `n`.
//
// # Safety
// `out` must be a valid pointer.
enum IsolabStatus isolab_pvi_thm6(int64_t n, struct IsolabPviFamily **out);

// Theorem 7 solution; `b` and `c` are rationals such as `"-2/3"`.
//
// # Safety
// `b` and `c` must be NUL-terminated strings and `out` a valid pointer.
enum IsolabStatus isolab_pvi_thm7(int64_t n,
                                  const char *b,
                                  const char *c,
                                  struct IsolabPviFamily **out);

// Theorem 8 family for integers `(a, b, c)`.
//
// # Safety
// `out` must be a valid pointer.
enum IsolabStatus isolab_pvi_thm8(int64_t a, int64_t b, int64_t c, struct IsolabPviFamily **out);

// Reads a `pvi_family` JSON document.
//
// # Safety
// `document` must be a NUL-terminated string and `out` a valid pointer.
enum IsolabStatus isolab_pvi_family_from_json(const char *document, struct IsolabPviFamily **out);

// Canonical text of `y(x)`; free with [`isolab_string_free`].
//
// # Safety
// `family` must be a live handle and `out` a valid pointer.
enum IsolabStatus isolab_pvi_family_y(const struct IsolabPviFamily *family, char **out);

// Whether the PVI residual of `y` is identically zero.
//
// # Safety
// `family` must be a live handle and `out` a valid pointer.
enum IsolabStatus isolab_pvi_family_residual_is_zero(const struct IsolabPviFamily *family,
                                                     bool *out);

// The `pvi_family` JSON document, including the residual status.
//
// # Safety
// `family` must be a live handle and `out` a valid pointer.
enum IsolabStatus isolab_pvi_family_json(const struct IsolabPviFamily *family, char **out);

// # Safety
// `family` must be null or a live handle.
void isolab_pvi_family_free(struct IsolabPviFamily *family);

// Theorem 10 solution with `big_m` times `a_1..a_M`.
//
// # Safety
// `out` must be a valid pointer.
enum IsolabStatus isolab_garnier_thm10(size_t big_m,
                                       int64_t m,
                                       int64_t n,
                                       struct IsolabGarnierSolution **out);

// Theorem 11 family; `c` holds `big_m` rational strings.
//
// # Safety
// `c` must point to `big_m` NUL-terminated strings and `out` be valid.
enum IsolabStatus isolab_garnier_thm11(size_t big_m,
                                       int64_t n,
                                       const char *const *c,
                                       struct IsolabGarnierSolution **out);

// Largest Hamiltonian residual over `count` points `(a_1, a_2)`, stored
// consecutively in `points`, and all 16 sign vectors. Two variables only.
//
// # Safety
// `solution` must be a live handle, `points` must hold `2 * count`
// doubles and `out` must be valid.
enum IsolabStatus isolab_garnier_max_residual(const struct IsolabGarnierSolution *solution,
                                              const double *points,
                                              size_t count,
                                              double step,
                                              double *out);

// The `garnier_solution` JSON document without verification rows.
//
// # Safety
// `solution` must be a live handle and `out` a valid pointer.
enum IsolabStatus isolab_garnier_json(const struct IsolabGarnierSolution *solution, char **out);

// # Safety
// `solution` must be null or a live handle.
void isolab_garnier_free(struct IsolabGarnierSolution *solution);

// Periods of `w^(jn) dz/(z - a_i)` on `w^m = (z - a_1)...(z - a_N)` with
// the default tolerances. A positive `fd_step` adds the finite-difference
// check; zero or negative skips it.
//
// # Safety
// `re` and `im` must each hold `count` doubles and `out` must be valid.
enum IsolabStatus isolab_period_report_new(uint32_t m,
                                           int64_t n,
                                           const double *re,
                                           const double *im,
                                           size_t count,
                                           uint32_t j,
                                           double fd_step,
                                           struct IsolabPeriodReport **out);

// Observed and expected rank and the overall verdict. Any out pointer
// may be null.
//
// # Safety
// `report` must be a live handle.
enum IsolabStatus isolab_period_report_summary(const struct IsolabPeriodReport *report,
                                               size_t *rank,
                                               size_t *expected_rank,
                                               bool *passed);

// Matrix shape: `rows` branch points by `cols` cycles.
//
// # Safety
// `report` must be a live handle and the out pointers valid.
enum IsolabStatus isolab_period_report_shape(const struct IsolabPeriodReport *report,
                                             size_t *rows,
                                             size_t *cols);

// Entry `(row, col)` of the period matrix.
//
// # Safety
// `report` must be a live handle and the out pointers valid.
enum IsolabStatus isolab_period_report_entry(const struct IsolabPeriodReport *report,
                                             size_t row,
                                             size_t col,
                                             double *re,
                                             double *im);

// The `period_report` JSON document.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum IsolabStatus isolab_period_report_json(const struct IsolabPeriodReport *report, char **out);

// # Safety
// `report` must be null or a live handle.
void isolab_period_report_free(struct IsolabPeriodReport *report);

// Recomputes a worked example (`"example-1"` ... `"example-9"`). `passed`
// receives the verdict; `report_json`, if not null, the full report.
//
// # Safety
// `id` must be a NUL-terminated string; `passed` must be valid.
enum IsolabStatus isolab_reproduce(const char *id, bool *passed, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISOLAB_H */
