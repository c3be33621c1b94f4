#ifndef SUBSHIFT_H
#define SUBSHIFT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum SubshiftStatus {
  SUBSHIFT_STATUS_OK = 0,
  SUBSHIFT_STATUS_NULL_ARGUMENT = 1,
  SUBSHIFT_STATUS_INVALID_UTF8 = 2,
  SUBSHIFT_STATUS_CONFIG = 3,
  SUBSHIFT_STATUS_INVALID_SPEC = 4,
  SUBSHIFT_STATUS_MALFORMED_CODE = 5,
  SUBSHIFT_STATUS_RESOURCE_LIMIT = 6,
  SUBSHIFT_STATUS_COMPUTE = 7,
  SUBSHIFT_STATUS_BUFFER_TOO_SMALL = 8,
  SUBSHIFT_STATUS_PANIC = 9,
} SubshiftStatus;

/**
 * A sliding block code bound to one subshift.
 */
typedef struct CodeHandle CodeHandle;

/**
 * A validated subshift.
 */
typedef struct SubshiftHandle SubshiftHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into this library from the same thread.
 */
const char *subshift_last_error(void);

/**
 * Builds a subshift from one spec table in TOML, e.g. `type = "sft"\nforbidden = ["11"]`.
 *
 * # Safety
 * `spec_toml` must be a nul-terminated string; `out` must be writable.
 */
enum SubshiftStatus subshift_new(const char *spec_toml, struct SubshiftHandle **out);

/**
 * # Safety
 * `h` must come from [`subshift_new`] and not be used afterwards. NULL is ignored.
 */
void subshift_free(struct SubshiftHandle *h);

/**
 * `P(n)`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SubshiftStatus subshift_block_complexity(const struct SubshiftHandle *h,
                                              size_t n,
                                              uint64_t *out);

/**
 * Writes `P(1..=n_max)` into `buf`, which must hold `n_max` entries.
 *
 * # Safety
 * `h` must be a live handle; `buf` must have room for `buf_len` values.
 */
enum SubshiftStatus subshift_complexity_table(const struct SubshiftHandle *h,
                                              size_t n_max,
                                              uint64_t *buf,
                                              size_t buf_len);

/**
 * The code of `sigma^k`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SubshiftStatus subshift_code_shift_power(const struct SubshiftHandle *h,
                                              int64_t k,
                                              struct CodeHandle **out);

/**
 * A code from its JSON form (`{"range": N, "rule": {...}}`) or a certificate file.
 *
 * # Safety
 * `h` must be a live handle, `json` nul-terminated, `out` writable.
 */
enum SubshiftStatus subshift_code_from_json(const struct SubshiftHandle *h,
                                            const char *json,
                                            struct CodeHandle **out);

/**
 * # Safety
 * `c` must come from this library and not be used afterwards. NULL is ignored.
 */
void subshift_code_free(struct CodeHandle *c);

/**
 * Least `b <= max_b`, then least `|a| <= max_a`, with `sigma^a phi^b = id`.
 * `*found` is 1 and `b`, `a` are set when such a pair exists, else `*found` is 0.
 *
 * # Safety
 * Handles must be live; out-pointers writable.
 */
enum SubshiftStatus subshift_order_mod_shift(const struct SubshiftHandle *h,
                                             const struct CodeHandle *code,
                                             size_t max_b,
                                             int64_t max_a,
                                             int32_t *found,
                                             uint64_t *b,
                                             int64_t *a);

/**
 * Number of distinct `n x k` windows of `eta(i, j) = (phi^j x)(i)`.
 *
 * # Safety
 * Handles must be live; `out` writable.
 */
enum SubshiftStatus subshift_rect_complexity(const struct SubshiftHandle *h,
                                             const struct CodeHandle *code,
                                             size_t n,
                                             size_t k,
                                             uint64_t *out);

/**
 * Number of automorphisms of range `range` with inverse range at most
 * `max_inv_range`, at the shift's default endomorphy depth.
 *
 * # Safety
 * `h` must be live; `out` writable.
 */
enum SubshiftStatus subshift_automorphism_count(const struct SubshiftHandle *h,
                                                size_t range,
                                                size_t max_inv_range,
                                                size_t *out);

/**
 * Runs a full experiment config (TOML) and returns the JSON report.
 *
 * # Safety
 * `config_toml` nul-terminated; `out` writable. Free the result with [`subshift_string_free`].
 */
enum SubshiftStatus subshift_run_experiment_json(const char *config_toml, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. NULL is ignored.
 */
void subshift_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBSHIFT_H */
