/* SPDX-License-Identifier: Apache-2.0 */

#ifndef HYPERLRC_H
#define HYPERLRC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HlrcStatus {
  HLRC_STATUS_OK = 0,
  HLRC_STATUS_NULL_POINTER = 1,
  HLRC_STATUS_INVALID_ARGUMENT = 2,
  HLRC_STATUS_PARSE = 3,
  HLRC_STATUS_FIELD = 4,
  HLRC_STATUS_CURVE = 5,
  HLRC_STATUS_CONSTRUCTION = 6,
  HLRC_STATUS_INFEASIBLE = 7,
  HLRC_STATUS_SINGULAR = 8,
  HLRC_STATUS_IO = 9,
  HLRC_STATUS_PANIC = 10,
} HlrcStatus;

/**
 * Distance strategy for `hlrc_verify`.
 */
typedef enum HlrcStrategy {
  HLRC_STRATEGY_AUTO = 0,
  HLRC_STRATEGY_SUPPORT = 1,
  HLRC_STRATEGY_EXHAUSTIVE = 2,
} HlrcStrategy;

/**
 * Verdict of a verification report.
 */
typedef enum HlrcVerdict {
  HLRC_VERDICT_OPTIMAL = 0,
  HLRC_VERDICT_ALMOST_OPTIMAL = 1,
  HLRC_VERDICT_BOUND_ONLY = 2,
  HLRC_VERDICT_REJECTED = 3,
} HlrcVerdict;

/**
 * A constructed or loaded code.
 */
typedef struct HlrcCode HlrcCode;

/**
 * A verification report.
 */
typedef struct HlrcReport HlrcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hlrc_version(void);

/**
 * Message of the last failed call on this thread; empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *hlrc_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void hlrc_string_free(char *s);

/**
 * Builds a code from a JSON run configuration, e.g.
 * `{"field": "9", "curve": "x5+x3+2x", "subgroup": "U", "ell": 4, "t": 4}`.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string; `out` must be writable.
 */
enum HlrcStatus hlrc_code_build(const char *config_json, struct HlrcCode **out);

/**
 * Loads a code from matrix CSV text and repair-group text.
 *
 * # Safety
 * Both strings must be NUL-terminated; `out` must be writable.
 */
enum HlrcStatus hlrc_code_load(const char *matrix_csv, const char *groups, struct HlrcCode **out);

/**
 * # Safety
 * `code` must come from this library and not be freed twice.
 */
void hlrc_code_free(struct HlrcCode *code);

/**
 * Length, dimension (generator rows), locality and field order.
 *
 * # Safety
 * `code` must be a live handle; each output pointer may be null.
 */
enum HlrcStatus hlrc_code_params(const struct HlrcCode *code,
                                 size_t *n,
                                 size_t *k,
                                 size_t *r,
                                 uint32_t *q);

/**
 * Generator matrix as CSV text; release with `hlrc_string_free`.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum HlrcStatus hlrc_code_matrix_csv(const struct HlrcCode *code, char **out);

/**
 * Encodes `k` message symbols into `n` codeword symbols.
 *
 * # Safety
 * `message` must hold `k` values and `word` room for `n`.
 */
enum HlrcStatus hlrc_code_encode(const struct HlrcCode *code,
                                 const uint32_t *message,
                                 size_t k,
                                 uint32_t *word,
                                 size_t n);

/**
 * Recovers `word[erased]` from the rest of its repair group.
 *
 * # Safety
 * `word` must hold `n` values; `symbol` must be writable.
 */
enum HlrcStatus hlrc_code_repair(const struct HlrcCode *code,
                                 const uint32_t *word,
                                 size_t n,
                                 size_t erased,
                                 uint32_t *symbol);

/**
 * Runs rank, distance, locality and repair checks. Zero budgets select the
 * library defaults.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum HlrcStatus hlrc_verify(const struct HlrcCode *code,
                            enum HlrcStrategy strategy,
                            uint64_t support_budget,
                            uint64_t exhaustive_budget,
                            size_t repair_trials,
                            uint64_t seed,
                            struct HlrcReport **out);

/**
 * # Safety
 * `report` must come from this library and not be freed twice.
 */
void hlrc_report_free(struct HlrcReport *report);

/**
 * Verdict, exact distance (-1 when unknown) and Singleton-type bound.
 *
 * # Safety
 * `report` must be a live handle; output pointers may be null.
 */
enum HlrcStatus hlrc_report_summary(const struct HlrcReport *report,
                                    enum HlrcVerdict *verdict,
                                    int64_t *distance,
                                    int64_t *bound);

/**
 * The report as versioned JSON; release with `hlrc_string_free`.
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum HlrcStatus hlrc_report_json(const struct HlrcReport *report, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERLRC_H */
