#ifndef KOORNWINDER_H
#define KOORNWINDER_H

/* Generated by the build script from src/lib.rs; edit there, not here. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a C API call.
typedef enum KwStatus {
  // The call succeeded.
  KW_STATUS_OK = 0,
  // The computation ran but a mathematical check failed (non-generic
  // parameters, a failed verification, an oracle mismatch).
  KW_STATUS_MATH_FAIL = 1,
  // The input could not be used: malformed JSON, a coordinate vector of
  // the wrong arity, parameters that violate a constraint.
  KW_STATUS_INVALID_INPUT = 2,
  // A required pointer argument was null.
  KW_STATUS_NULL_POINTER = 3,
  // A panic inside the library was caught at the boundary.
  KW_STATUS_PANIC = 4,
} KwStatus;

// Opaque handle holding validated parameters; create with
// `kw_context_new`, release with `kw_context_free`.
typedef struct KwContext KwContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the library version as a static NUL-terminated string.
const char *kw_version(void);

// Returns the message for the most recent failure on this thread, or an
// empty string after a success.  The pointer stays valid until the next
// call into the library on the same thread; do not free it.
const char *kw_last_error_message(void);

// Builds a context from a JSON parameter document (same schema as the CLI
// config file: rank, sqrt_q, k0, u0, k, kr, ur as rational strings, plus
// optional t and seed).  Returns null on failure; see
// `kw_last_error_message`.
//
// # Safety
// `config_json` must be null or point at a NUL-terminated string.
struct KwContext *kw_context_new(const char *config_json);

// Releases a context created by `kw_context_new`.  Accepts null.
//
// # Safety
// `ctx` must be null or a pointer previously returned by
// `kw_context_new` that has not been freed.
void kw_context_free(struct KwContext *ctx);

// Returns the rank the context was built with, or 0 for a null context.
//
// # Safety
// `ctx` must be null or a live pointer from `kw_context_new`.
size_t kw_context_rank(const struct KwContext *ctx);

// Describes the orbit of a point: basepoint, facet, minimal representative
// word, lower set size, and torus constraints, as a JSON object.
//
// # Safety
// `ctx` must be a live context pointer, `point` a NUL-terminated string of
// comma-separated rationals, and `out_json` a valid destination for one
// pointer write.
enum KwStatus kw_orbit_json(const struct KwContext *ctx, const char *point, char **out_json);

// Computes the monic joint eigenfunction for a degree and returns it as a
// JSON object (degree, orbit basepoint, facet, eigenvalues, terms).
//
// # Safety
// Same contract as `kw_orbit_json`.
enum KwStatus kw_epoly_json(const struct KwContext *ctx, const char *point, char **out_json);

// Tabulates a nonsymmetric Koornwinder polynomial (integer orbit, t = 1)
// as JSON.  With `check_oracle` true — rank 1 only — the result is also
// compared against the independent reference computation; a mismatch
// yields the math-failure status with the JSON still written, and the
// object carries an `oracle_match` field.
//
// # Safety
// Same contract as `kw_orbit_json`, with `degree` a comma-separated
// integer vector.
enum KwStatus kw_koornwinder_json(const struct KwContext *ctx,
                                  const char *degree,
                                  bool check_oracle,
                                  char **out_json);

// Runs the seeded randomized relation suite and reports it as JSON
// (`rank`, `seed`, `passed`, and a `checks` array).  A `seed` of 0 falls
// back to the seed in the config document, if any.  The JSON is written
// whenever the suite ran; the status reports a math failure if any check
// failed.
//
// # Safety
// `ctx` must be a live context pointer and `out_json` a valid destination
// for one pointer write.
enum KwStatus kw_verify_json(const struct KwContext *ctx,
                             size_t trials,
                             uint64_t seed,
                             char **out_json);

// Releases a string returned through an `out_json` parameter.  Accepts
// null.
//
// # Safety
// `s` must be null or a pointer received from this library that has not
// been freed.
void kw_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KOORNWINDER_H */
