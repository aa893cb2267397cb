#ifndef QCORE_H
#define QCORE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define QC_OK 0

// A claim or identity failed.
#define QC_COUNTEREXAMPLE 1

// Nothing failed but something was skipped.
#define QC_SKIPPED 2

#define QC_ERR_NULL -1

#define QC_ERR_UTF8 -2

#define QC_ERR_PARSE -3

#define QC_ERR_EVAL -4

#define QC_ERR_RANGE -5

#define QC_ERR_UNKNOWN -6

#define QC_ERR_PANIC -7

// Opaque truncated power series.
typedef struct QcSeries QcSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last error on this thread, or NULL. The pointer stays
// valid until the next `qc_` call on the same thread.
const char *qc_last_error(void);

// Library version as a static NUL-terminated string.
const char *qc_version(void);

// Evaluates an eta-quotient expression to `order` coefficients. `modulus`
// 0 means exact integers.
//
// # Safety
// `expr` must be a NUL-terminated string and `out` a valid pointer.
int32_t qc_series_eval(const char *expr, uint64_t modulus, size_t order, struct QcSeries **out);

// Number of stored coefficients, or 0 for NULL.
//
// # Safety
// `s` must be NULL or a handle from `qc_series_eval`.
size_t qc_series_order(const struct QcSeries *s);

// Coefficient of `q^n` as a decimal string (exact or the residue).
//
// # Safety
// `s` must be a live handle and `out` a valid pointer.
int32_t qc_series_coeff_string(const struct QcSeries *s, size_t n, char **out);

// Coefficient of `q^n` as an `int64_t`; `QC_ERR_RANGE` if it does not fit.
//
// # Safety
// `s` must be a live handle and `out` a valid pointer.
int32_t qc_series_coeff_i64(const struct QcSeries *s, size_t n, int64_t *out);

// Releases a series handle. NULL is ignored.
//
// # Safety
// `s` must be NULL or a handle not yet freed.
void qc_series_free(struct QcSeries *s);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string from this library not yet freed.
void qc_string_free(char *s);

// Verifies a claim such as `A(5,4; 25n+21) % 5^5 == 0` to `order` and
// writes the JSON report to `out_json`.
//
// # Safety
// `claim` must be a NUL-terminated string and `out_json` a valid pointer.
int32_t qc_verify_claim(const char *claim, size_t order, char **out_json);

// Verifies a registered identity. `order` 0 uses its default order.
//
// # Safety
// `id` must be a NUL-terminated string and `out_json` a valid pointer.
int32_t qc_verify_identity(const char *id, size_t order, char **out_json);

// Runs a suite or family with default parameters.
//
// # Safety
// `suite` must be a NUL-terminated string and `out_json` a valid pointer.
int32_t qc_run_suite(const char *suite, size_t order, uint64_t seed, char **out_json);

// Recurrence table rows `0..=alpha_max` as a JSON array.
//
// # Safety
// `out_json` must be a valid pointer.
int32_t qc_recurrence_json(uint32_t alpha_max, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCORE_H */
