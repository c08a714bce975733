#ifndef LOMMEL_H
#define LOMMEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define LOMMEL_METHOD_SERIES 0

#define LOMMEL_METHOD_QUADRATURE 1

#define LOMMEL_METHOD_COSQUAD 2

#define LOMMEL_METHOD_TRIG 3

#define LOMMEL_FAMILY_EVEN 0

#define LOMMEL_FAMILY_ODD 1

#define LOMMEL_POLY_A 0

#define LOMMEL_POLY_B 1

#define LOMMEL_POLY_C 2

typedef enum LommelStatus {
  LOMMEL_STATUS_OK = 0,
  LOMMEL_STATUS_EXCLUDED_CASE = 1,
  LOMMEL_STATUS_POLE = 2,
  LOMMEL_STATUS_DOMAIN = 3,
  LOMMEL_STATUS_NON_CONVERGENCE = 4,
  LOMMEL_STATUS_EXCLUDED_INDEX = 5,
  LOMMEL_STATUS_RECONCILIATION = 6,
  LOMMEL_STATUS_PARSE = 7,
  LOMMEL_STATUS_NULL_POINTER = 8,
  LOMMEL_STATUS_INVALID_ARGUMENT = 9,
  LOMMEL_STATUS_PANIC = 10,
} LommelStatus;

/**
 * All roots of one polynomial.
 */
typedef struct LommelRootSet LommelRootSet;

/**
 * An approximant triple (A, B, C).
 */
typedef struct LommelTriple LommelTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last error on this thread, or null. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *lommel_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void lommel_string_free(char *s);

/**
 * s_{mu,nu}(z) by one of the `LOMMEL_METHOD_*` methods. `est_error` may be null.
 *
 * # Safety
 * `value` must be valid for writes; `est_error` must be null or valid for writes.
 */
enum LommelStatus lommel_eval(double mu,
                              double nu,
                              double z,
                              uint32_t method,
                              double tol,
                              double *value,
                              double *est_error);

/**
 * 2F1(1/2+nu, 1/2-nu; n+1/2; sin^2(theta/2)) in closed trigonometric form.
 *
 * # Safety
 * `value` must be valid for writes.
 */
enum LommelStatus lommel_hyp2f1_trig(uint32_t n, double nu, double theta, double *value);

/**
 * Even-family triple (0, 2n) in primitive normalization.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LommelStatus lommel_triple_even(uint32_t n, struct LommelTriple **out);

/**
 * Odd-family triple (1, 2n+1) in primitive normalization.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LommelStatus lommel_triple_odd(uint32_t n, struct LommelTriple **out);

/**
 * Triple (m, n) at the raw scale, so `lommel_triple_eval` gives s_{m+1/2,n+1/2}.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LommelStatus lommel_triple_general(uint32_t m, uint32_t n, struct LommelTriple **out);

/**
 * # Safety
 * `t` must be null or a handle from this library, not yet freed.
 */
void lommel_triple_free(struct LommelTriple *t);

/**
 * JSON form of the triple; free with `lommel_string_free`.
 *
 * # Safety
 * `t` must be a live triple handle and `out` valid for writes.
 */
enum LommelStatus lommel_triple_json(const struct LommelTriple *t, char **out);

/**
 * Parses a triple from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for writes.
 */
enum LommelStatus lommel_triple_from_json(const char *json, struct LommelTriple **out);

/**
 * Degree of A, B or C. A zero polynomial reports -1.
 *
 * # Safety
 * `t` must be a live triple handle and `degree` valid for writes.
 */
enum LommelStatus lommel_triple_degree(const struct LommelTriple *t,
                                       uint32_t poly,
                                       int32_t *degree);

/**
 * (A - B cos z - C sin z) / z^(n+1/2).
 *
 * # Safety
 * `t` must be a live triple handle and `value` valid for writes.
 */
enum LommelStatus lommel_triple_eval(const struct LommelTriple *t, double z, double *value);

/**
 * Whether A - B cos z - C sin z = O(z^order), checked exactly.
 *
 * # Safety
 * `t` must be a live triple handle and `holds` valid for writes.
 */
enum LommelStatus lommel_triple_order_check(const struct LommelTriple *t,
                                            uint32_t order,
                                            bool *holds);

/**
 * Roots of polynomial `poly` (`LOMMEL_POLY_*`) of family triple n.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LommelStatus lommel_roots(uint32_t family_code,
                               uint32_t poly,
                               uint32_t n,
                               struct LommelRootSet **out);

/**
 * # Safety
 * `r` must be null or a handle from this library, not yet freed.
 */
void lommel_rootset_free(struct LommelRootSet *r);

/**
 * Number of roots; 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a live root set handle.
 */
size_t lommel_rootset_len(const struct LommelRootSet *r);

/**
 * Root `index` and its residual. `residual` may be null.
 *
 * # Safety
 * `r` must be a live root set handle; `re` and `im` valid for writes.
 */
enum LommelStatus lommel_rootset_get(const struct LommelRootSet *r,
                                     size_t index,
                                     double *re,
                                     double *im,
                                     double *residual);

/**
 * Zero discrepancy table 1 or 2 as CSV; free with `lommel_string_free`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LommelStatus lommel_table_csv(uint32_t which_table, uint32_t kmax, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOMMEL_H */
