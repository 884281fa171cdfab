#ifndef ADE_CHAMBERS_H
#define ADE_CHAMBERS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

/**
 * Status codes; 2, 3 and 4 match the command-line exit codes.
 */
typedef enum AdeStatus {
  ADE_STATUS_OK = 0,
  ADE_STATUS_INPUT_ERROR = 2,
  ADE_STATUS_CONSISTENCY_ERROR = 3,
  ADE_STATUS_RESOURCE_ERROR = 4,
  ADE_STATUS_NULL_ARGUMENT = 10,
  ADE_STATUS_BUFFER_TOO_SMALL = 11,
  ADE_STATUS_PANIC = 12,
} AdeStatus;

/**
 * An enumerated chamber structure.
 */
typedef struct AdeChambers AdeChambers;

/**
 * Retained curves of a partial resolution.
 */
typedef struct AdeConfiguration AdeConfiguration;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *ade_last_error(void);

/**
 * Builds a configuration from a diagram name such as `"E7"` and `len`
 * vertex indices.
 *
 * # Safety
 * `diagram` must be a NUL-terminated string, `slots` must point to `len`
 * readable values and `out` must be writable.
 */
enum AdeStatus ade_configuration_new(const char *diagram,
                                     const uintptr_t *slots,
                                     uintptr_t len,
                                     struct AdeConfiguration **out);

/**
 * Builds a configuration from a JSON problem spec (labels and aliases allowed).
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum AdeStatus ade_configuration_from_spec(const char *spec, struct AdeConfiguration **out);

/**
 * # Safety
 * `config` must come from this library and not be used afterwards; null is ignored.
 */
void ade_configuration_free(struct AdeConfiguration *config);

/**
 * Number of slots.
 *
 * # Safety
 * `config` must be a live handle or null.
 */
uintptr_t ade_configuration_len(const struct AdeConfiguration *config);

/**
 * Knits the exchange sequence at `slot` (0-based). Writes the replacing
 * vertex to `new_vertex` and the approximation multiplicity of every
 * diagram vertex to `b`, which must hold `b_len` >= vertex count entries.
 *
 * # Safety
 * `config` must be a live handle, `new_vertex` writable and `b` writable
 * for `b_len` entries.
 */
enum AdeStatus ade_knit(const struct AdeConfiguration *config,
                        uintptr_t slot,
                        uintptr_t *new_vertex,
                        uint32_t *b,
                        uintptr_t b_len);

/**
 * Enumerates every chamber, cross-checked against the root arrangement
 * when `oracle` is true.
 *
 * # Safety
 * `config` must be a live handle and `out` writable.
 */
enum AdeStatus ade_chambers_enumerate(const struct AdeConfiguration *config,
                                      bool oracle,
                                      struct AdeChambers **out);

/**
 * # Safety
 * `chambers` must come from this library and not be used afterwards; null is ignored.
 */
void ade_chambers_free(struct AdeChambers *chambers);

/**
 * # Safety
 * `chambers` must be a live handle or null.
 */
uintptr_t ade_chambers_count(const struct AdeChambers *chambers);

/**
 * # Safety
 * `chambers` must be a live handle or null.
 */
uintptr_t ade_chambers_wall_count(const struct AdeChambers *chambers);

/**
 * Coefficients of wall `index` (one per slot) into `coeffs`.
 *
 * # Safety
 * `chambers` must be a live handle and `coeffs` writable for `len` entries.
 */
enum AdeStatus ade_chambers_wall(const struct AdeChambers *chambers,
                                 uintptr_t index,
                                 int64_t *coeffs,
                                 uintptr_t len);

/**
 * Lower and upper bounds on the number of minimal models.
 *
 * # Safety
 * `chambers` must be a live handle; `lower` and `upper` writable.
 */
enum AdeStatus ade_chambers_bounds(const struct AdeChambers *chambers,
                                   uintptr_t *lower,
                                   uintptr_t *upper);

/**
 * Runs the full report for a JSON spec and returns the report JSON,
 * to be released with [`ade_string_free`].
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum AdeStatus ade_report_json(const char *spec, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards; null is ignored.
 */
void ade_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADE_CHAMBERS_H */
