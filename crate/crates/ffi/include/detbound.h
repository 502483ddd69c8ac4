#ifndef DETBOUND_H
#define DETBOUND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DetboundCase {
  DETBOUND_CASE_ALPHA_SQ_LT_BETA = 0,
  DETBOUND_CASE_ALPHA_SQ_EQ_BETA = 1,
  DETBOUND_CASE_ALPHA_SQ_GT_BETA = 2,
} DetboundCase;

typedef enum DetboundFormula {
  DETBOUND_FORMULA_BETA_POWER = 0,
  DETBOUND_FORMULA_ALPHA_KAPPA = 1,
} DetboundFormula;

/**
 * Status codes returned by every fallible function.
 */
typedef enum DetboundStatus {
  DETBOUND_STATUS_OK = 0,
  DETBOUND_STATUS_NULL_POINTER = 1,
  DETBOUND_STATUS_INVALID_UTF8 = 2,
  DETBOUND_STATUS_PARSE = 3,
  DETBOUND_STATUS_INVALID_DIMENSION = 4,
  DETBOUND_STATUS_DIMENSION_MISMATCH = 5,
  DETBOUND_STATUS_INFEASIBLE = 6,
  DETBOUND_STATUS_INVALID_PARAMETER = 7,
  DETBOUND_STATUS_SEARCH_SPACE_TOO_LARGE = 8,
  DETBOUND_STATUS_DIVERGENT_SPEC = 9,
  DETBOUND_STATUS_SINGULAR = 10,
  DETBOUND_STATUS_PANIC = 11,
} DetboundStatus;

typedef enum DetboundVariant {
  DETBOUND_VARIANT_SHIFTED_IDENTITY = 0,
  DETBOUND_VARIANT_ORTHOGONAL_BLOCKS = 1,
} DetboundVariant;

/**
 * Opaque square matrix with exact rational entries.
 */
typedef struct DetboundMatrix DetboundMatrix;

/**
 * Real-matrix bound. `alpha`, `beta` and `kappa` are rounded to double.
 */
typedef struct DetboundBound {
  double bound;
  double beta_power;
  /**
   * Evaluated in every case; it is only a bound when alpha^2 >= beta.
   */
  double alpha_kappa;
  double alpha;
  double beta;
  double kappa;
  enum DetboundCase case_tag;
  enum DetboundFormula formula_tag;
  bool feasible;
} DetboundBound;

typedef struct DetboundComplexBound {
  double bound;
  double bound_direct;
  double bound_swapped;
} DetboundComplexBound;

/**
 * Characterization checks. `rowsum_ok` and `colsum_ok` are -1 when the
 * check does not apply, otherwise 0 or 1.
 */
typedef struct DetboundVerify {
  bool all_ok;
  bool gram_ok;
  bool det_ok;
  int32_t rowsum_ok;
  int32_t colsum_ok;
  double det;
  double max_residual;
} DetboundVerify;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL after a
 * successful call. The pointer stays valid until the next call on the same
 * thread.
 */
const char *detbound_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void detbound_string_free(char *s);

/**
 * Builds an n×n matrix from `n*n` row-major doubles.
 *
 * # Safety
 * `entries` must point to `n*n` readable doubles and `out` must be writable.
 */
enum DetboundStatus detbound_matrix_from_f64(size_t n,
                                             const double *entries,
                                             struct DetboundMatrix **out);

/**
 * Builds an n×n matrix from `n*n` row-major integers.
 *
 * # Safety
 * `entries` must point to `n*n` readable integers and `out` must be writable.
 */
enum DetboundStatus detbound_matrix_from_i64(size_t n,
                                             const int64_t *entries,
                                             struct DetboundMatrix **out);

/**
 * Parses the comma-separated matrix text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` must be writable.
 */
enum DetboundStatus detbound_matrix_parse(const char *text, struct DetboundMatrix **out);

/**
 * # Safety
 * `m` must be NULL or a handle from this library that has not been freed.
 */
void detbound_matrix_free(struct DetboundMatrix *m);

/**
 * Order of the matrix, or 0 for NULL.
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
size_t detbound_matrix_n(const struct DetboundMatrix *m);

/**
 * Entry (row, col), zero-based, rounded to double.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum DetboundStatus detbound_matrix_get(const struct DetboundMatrix *m,
                                        size_t row,
                                        size_t col,
                                        double *out);

/**
 * Matrix in the exact text format. Free the result with
 * `detbound_string_free`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum DetboundStatus detbound_matrix_to_text(const struct DetboundMatrix *m, char **out);

/**
 * Determinant by partial-pivot LU in double precision.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum DetboundStatus detbound_det(const struct DetboundMatrix *m, double *out);

/**
 * Exact determinant as an integer or "p/q" string. Free the result with
 * `detbound_string_free`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum DetboundStatus detbound_det_exact(const struct DetboundMatrix *m, char **out);

/**
 * Three-case bound from the entry sum and square sum.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum DetboundStatus detbound_bound(const struct DetboundMatrix *m, struct DetboundBound *out);

/**
 * Bound on |det(A + iB)|.
 *
 * # Safety
 * `real` and `imag` must be live handles and `out` writable.
 */
enum DetboundStatus detbound_complex_bound(const struct DetboundMatrix *real,
                                           const struct DetboundMatrix *imag,
                                           struct DetboundComplexBound *out);

/**
 * Product of the row norms.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum DetboundStatus detbound_hadamard_row_bound(const struct DetboundMatrix *m, double *out);

/**
 * Builds an extremal matrix. `alpha` and `beta` use the rational syntax
 * (integer, decimal or "p/q"); `variant` is a `DetboundVariant` value.
 * `claimed_det` may be NULL.
 *
 * # Safety
 * `alpha` and `beta` must be NUL-terminated strings and `out` writable.
 */
enum DetboundStatus detbound_construct(size_t n,
                                       const char *alpha,
                                       const char *beta,
                                       uint32_t variant,
                                       struct DetboundMatrix **out,
                                       double *claimed_det);

/**
 * Checks the necessary conditions for a determinant maximizer.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum DetboundStatus detbound_verify(const struct DetboundMatrix *m,
                                    double tol,
                                    struct DetboundVerify *out);

/**
 * Exhaustive maximal |det| over arrangements of `len = n*n` integers.
 * `workers = 0` uses every core. `best_matrix` may be NULL.
 *
 * # Safety
 * `entries` must point to `len` integers, `best_abs_det` must be writable.
 */
enum DetboundStatus detbound_search_exhaustive(size_t n,
                                               const int64_t *entries,
                                               size_t len,
                                               size_t workers,
                                               double *best_abs_det,
                                               struct DetboundMatrix **best_matrix);

/**
 * Limit bound for det(I − A) given an infinite-matrix spec in JSON.
 *
 * # Safety
 * `spec_json` must be a NUL-terminated string and `out` writable.
 */
enum DetboundStatus detbound_koch_bound(const char *spec_json, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DETBOUND_H */
