#ifndef LIOUVILLE_H
#define LIOUVILLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success / non-negative verification statuses are >= 0.
 */
#define LIOU_OK 0

/**
 * A pointer or string argument was null or malformed.
 */
#define LIOU_ERR_INVALID_ARGUMENT -1

/**
 * A precondition of the requested operation was violated.
 */
#define LIOU_ERR_DOMAIN -2

/**
 * The exact tier would exceed the materialization budget.
 */
#define LIOU_ERR_BUDGET -3

/**
 * Internal failure (a bug; never expected).
 */
#define LIOU_ERR_INTERNAL -4

/**
 * Opaque configuration for the merged audit report.
 */
typedef struct LiouConfig LiouConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message for this thread, or null when none was recorded.
 * The caller owns the returned string (release with `liou_string_free`).
 */
char *liou_last_error(void);

/**
 * Release a string produced by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through this library's
 * out-parameters (or `liou_last_error`) and not yet freed.
 */
void liou_string_free(char *s);

/**
 * Static library version string; do not free.
 */
const char *liou_version(void);

/**
 * Fresh configuration with the default windows (branch bits 000000,
 * depth 9, gap bases 222222).
 */
struct LiouConfig *liou_config_new(void);

/**
 * Release a configuration handle.
 *
 * # Safety
 * `cfg` must come from `liou_config_new` and not be used afterwards.
 */
void liou_config_free(struct LiouConfig *cfg);

/**
 * Set the branch bits (a string over {0,1}).
 *
 * # Safety
 * `cfg` must be a live handle from `liou_config_new`; `bits` must be a
 * valid NUL-terminated string.
 */
int32_t liou_config_set_bits(struct LiouConfig *cfg, const char *bits);

/**
 * Set the construction depth (number of partial quotients).
 *
 * # Safety
 * `cfg` must be a live handle from `liou_config_new`.
 */
int32_t liou_config_set_depth(struct LiouConfig *cfg, uint64_t depth);

/**
 * Set the gap bases (a string over {2,3}).
 *
 * # Safety
 * `cfg` must be a live handle from `liou_config_new`; `bases` must be a
 * valid NUL-terminated string.
 */
int32_t liou_config_set_gap_bases(struct LiouConfig *cfg, const char *bases);

/**
 * Set the enclosure width target to 10^-pow.
 *
 * # Safety
 * `cfg` must be a live handle from `liou_config_new`.
 */
int32_t liou_config_set_eps_pow10(struct LiouConfig *cfg, uint32_t pow);

/**
 * Set the exact-tier budget (largest materialized power-of-ten exponent).
 *
 * # Safety
 * `cfg` must be a live handle from `liou_config_new`.
 */
int32_t liou_config_set_budget(struct LiouConfig *cfg, uint64_t max_pow10_exp);

/**
 * Run the merged audit report for a configuration. On success `out_json`
 * receives the JSON row array and the return value is the verification
 * exit contract (0 / 1 / 3).
 *
 * # Safety
 * `cfg` must be a live handle; `out_json` must be a valid pointer.
 */
int32_t liou_full_report_json(const struct LiouConfig *cfg, char **out_json);

/**
 * Generate the partial quotients for branch bits at a given depth;
 * `out_json` receives {"partial_quotients": [...], "convergents": [...]}.
 *
 * # Safety
 * `bits` must be a valid NUL-terminated string; `out_json` a valid pointer.
 */
int32_t liou_generate_json(const char *bits, uint64_t depth, char **out_json);

/**
 * Exact truncation evaluation at a rational "p/q"; `out_json` receives the
 * numerator, factored canonical denominator, and reduced denominator.
 *
 * # Safety
 * `z` and `gap_bases` must be valid NUL-terminated strings; `out_json` a
 * valid pointer.
 */
int32_t liou_eval_json(const char *z, uint64_t truncate, const char *gap_bases, char **out_json);

/**
 * Ultra-strong verification rows as JSON; the return value is the
 * verification exit contract (0 / 1 / 3) or a negative error code.
 *
 * # Safety
 * `bits` must be a valid NUL-terminated string; `out_json` a valid pointer.
 */
int32_t liou_verify_json(const char *bits, uint64_t depth, uint64_t upto, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIOUVILLE_H */
