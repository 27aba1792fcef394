#ifndef SPSLAB_H
#define SPSLAB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every fallible function.
 */
typedef enum SpslabStatus {
  SPSLAB_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SPSLAB_STATUS_NULL_POINTER = 1,
  /**
   * Input text was not UTF-8.
   */
  SPSLAB_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed document (syntax or unknown names).
   */
  SPSLAB_STATUS_PARSE = 3,
  /**
   * The document parsed but the system violates its axioms.
   */
  SPSLAB_STATUS_AXIOM_VIOLATION = 4,
  /**
   * An argument was out of its domain (e.g. a non-unit vector).
   */
  SPSLAB_STATUS_INVALID_ARGUMENT = 5,
  /**
   * Any other library error.
   */
  SPSLAB_STATUS_FAILURE = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  SPSLAB_STATUS_PANIC = 7,
} SpslabStatus;

/**
 * Opaque owner of a verified system.
 */
typedef struct SpsHandle SpsHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and verifies a system document.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 * On success `*out` owns a handle that must be freed with
 * [`spslab_sps_free`]; on failure `*out` is set to null.
 */
enum SpslabStatus spslab_sps_from_toml(const char *text, struct SpsHandle **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void spslab_sps_free(struct SpsHandle *h);

/**
 * Number of states and properties of the system.
 *
 * # Safety
 * `h` must be a live handle; the out pointers must be valid or null.
 */
enum SpslabStatus spslab_sps_counts(const struct SpsHandle *h, size_t *n_states, size_t *n_props);

/**
 * Re-runs the axiom check; `*passed` is 1 if every axiom holds.
 *
 * # Safety
 * `h` must be a live handle and `passed` a valid pointer.
 */
enum SpslabStatus spslab_sps_verify(const struct SpsHandle *h, int32_t *passed);

/**
 * Number of topological properties (always at least 2: bottom and top).
 *
 * # Safety
 * `h` must be a live handle and `count` a valid pointer.
 */
enum SpslabStatus spslab_sps_topological_count(const struct SpsHandle *h, size_t *count);

/**
 * `*result` is 1 when every property is topological.
 *
 * # Safety
 * `h` must be a live handle and `result` a valid pointer.
 */
enum SpslabStatus spslab_sps_is_t_classical(const struct SpsHandle *h, int32_t *result);

/**
 * Probability of the up outcome for unit vectors `state` and `axis`.
 *
 * # Safety
 * `state` and `axis` must point to 3 doubles; `prob` must be valid.
 */
enum SpslabStatus spslab_outcome_probability(const double *state,
                                             const double *axis,
                                             double epsilon,
                                             double d,
                                             double *prob);

/**
 * Runs `n` seeded trials; `*ups` receives the number of up outcomes.
 * The count depends only on the inputs and seed, not on thread count.
 *
 * # Safety
 * `state` and `axis` must point to 3 doubles; `ups` must be valid.
 */
enum SpslabStatus spslab_simulate(const double *state,
                                  const double *axis,
                                  double epsilon,
                                  double d,
                                  uint64_t n,
                                  uint64_t seed,
                                  uint64_t *ups);

/**
 * Message of the last failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *spslab_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPSLAB_H */
