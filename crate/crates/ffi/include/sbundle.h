#ifndef SBUNDLE_H
#define SBUNDLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SbStatus {
  SB_STATUS_OK = 0,
  SB_STATUS_NULL_POINTER = 1,
  SB_STATUS_INVALID_ARGUMENT = 2,
  SB_STATUS_INVALID_INPUT = 3,
  SB_STATUS_OVERFLOW = 4,
  /**
   * The requested bound does not exist for these parameters.
   */
  SB_STATUS_ABSENT = 5,
  SB_STATUS_PANIC = 6,
} SbStatus;

typedef enum SbFormat {
  SB_FORMAT_JSON = 0,
  SB_FORMAT_CSV = 1,
} SbFormat;

/**
 * Opaque handle to a construction report.
 */
typedef struct SbConstruction SbConstruction;

/**
 * Opaque handle to a permutation cover.
 */
typedef struct SbCover SbCover;

/**
 * One fibration: base genus, fiber genus, signature.
 */
typedef struct SbBundle {
  int64_t base_genus;
  int64_t fiber_genus;
  int64_t signature;
} SbBundle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into this library on the same thread.
 */
const char *sb_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void sb_string_free(char *s);

/**
 * Builds `X_{g,n}` (`g, n >= 2`).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum SbStatus sb_construction_xgn(uint32_t g, uint32_t n, struct SbConstruction **out);

/**
 * Builds the genus-2 double-cover construction.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum SbStatus sb_construction_simple_genus2(struct SbConstruction **out);

/**
 * # Safety
 * `h` must be NULL or a handle from this library not yet freed.
 */
void sb_construction_free(struct SbConstruction *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SbStatus sb_construction_signature(const struct SbConstruction *h, int64_t *out);

/**
 * Euler characteristic of the total space.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SbStatus sb_construction_total_chi(const struct SbConstruction *h, int64_t *out);

/**
 * Fibration `which` (1 or 2) of the construction.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SbStatus sb_construction_fibration(const struct SbConstruction *h,
                                        uint32_t which,
                                        struct SbBundle *out);

/**
 * Report with cross-validation results as JSON. Free with `sb_string_free`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SbStatus sb_construction_to_json(const struct SbConstruction *h, char **out);

/**
 * Counts of passed and failed consistency checks.
 *
 * # Safety
 * `h` must be a live handle; `passed` and `failed` must be writable.
 */
enum SbStatus sb_construction_cross_validate(const struct SbConstruction *h,
                                             size_t *passed,
                                             size_t *failed);

/**
 * Genus of a connected cover of degree `degree` of a genus-`base`
 * surface with `counts[i]` points of ramification index `indices[i]`.
 *
 * # Safety
 * `indices` and `counts` must each point to `len` values (or be NULL when
 * `len` is 0); `out` must be writable.
 */
enum SbStatus sb_rh_cover_genus(uint64_t base,
                                uint64_t degree,
                                const uint64_t *indices,
                                const uint64_t *counts,
                                size_t len,
                                int64_t *out);

/**
 * Signature of an `sheets`-fold cyclic cover branched along a class of
 * square `branch_square` in a surface of signature `ambient_signature`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SbStatus sb_hirzebruch_signature(int64_t sheets,
                                      int64_t ambient_signature,
                                      int64_t branch_square,
                                      int64_t *out);

/**
 * Parses a cover-spec JSON document. Relation failures are not errors
 * here; check with `sb_cover_validate`.
 *
 * # Safety
 * `json` must be a NUL-terminated UTF-8 string; `out` must be writable.
 */
enum SbStatus sb_cover_from_json(const char *json, struct SbCover **out);

/**
 * # Safety
 * `h` must be NULL or a handle from this library not yet freed.
 */
void sb_cover_free(struct SbCover *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SbStatus sb_cover_validate(const struct SbCover *h, bool *out);

/**
 * Number of connected components. Fails with `SB_STATUS_INVALID_INPUT`
 * for a cover that does not validate.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SbStatus sb_cover_component_count(const struct SbCover *h, size_t *out);

/**
 * Euler characteristic by cycle counting.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SbStatus sb_cover_euler_char(const struct SbCover *h, int64_t *out);

/**
 * Best upper bound on `G_f` from the `X_{g,n}` family. `value` receives
 * `"p/q"`; `n` and `g` the witnessing factorization. Returns
 * `SB_STATUS_ABSENT` when `f` has no factorization with both factors >= 2.
 *
 * # Safety
 * `value`, `n` and `g` must be writable.
 */
enum SbStatus sb_gf_upper(uint64_t f, char **value, uint64_t *n, uint64_t *g);

/**
 * Bounds table for `f = 4..=f_max` as JSON or CSV.
 *
 * # Safety
 * `out` must be writable.
 */
enum SbStatus sb_bounds_table(uint64_t f_max, enum SbFormat format, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SBUNDLE_H */
