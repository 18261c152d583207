#ifndef WINGER_H
#define WINGER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WingerStatus {
  WINGER_STATUS_OK = 0,
  WINGER_STATUS_NULL_POINTER = 1,
  WINGER_STATUS_INVALID_ARGUMENT = 2,
  WINGER_STATUS_CONSTRUCTION = 3,
  WINGER_STATUS_CERTIFICATE = 4,
  WINGER_STATUS_ARITHMETIC = 5,
  WINGER_STATUS_OVERFLOW = 6,
  WINGER_STATUS_PANIC = 7,
} WingerStatus;

typedef enum WingerConvention {
  WINGER_CONVENTION_STANDARD = 0,
  WINGER_CONVENTION_REPBAS = 1,
} WingerConvention;

typedef enum WingerFormat {
  WINGER_FORMAT_JSON = 0,
  WINGER_FORMAT_CSV = 1,
} WingerFormat;

typedef enum WingerMatrix {
  WINGER_MATRIX_EDGE = 0,
  WINGER_MATRIX_TRC = 1,
  WINGER_MATRIX_ZERO = 2,
  WINGER_MATRIX_MINUS_ONE = 3,
  WINGER_MATRIX_EDGE_TRC = 4,
} WingerMatrix;

/**
 * Opaque handle to a fully built and self-checked model.
 */
typedef struct WingerContext WingerContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string. Do not free.
 */
const char *winger_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next failing call.
 */
const char *winger_last_error(void);

/**
 * Builds the model. `swap_tetrads` exchanges E and iota E.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum WingerStatus winger_context_new(bool swap_tetrads,
                                     enum WingerConvention conv,
                                     struct WingerContext **out);

/**
 * # Safety
 * `ctx` must be NULL or a handle from [`winger_context_new`] that was not freed yet.
 */
void winger_context_free(struct WingerContext *ctx);

/**
 * Runs the checks whose id matches `pattern` (all of them when NULL) and stores the counts.
 *
 * # Safety
 * `ctx` must be a live handle, `pattern` NULL or a NUL-terminated string, `passed` and `total` writable.
 */
enum WingerStatus winger_verify(const struct WingerContext *ctx,
                                const char *pattern,
                                size_t *passed,
                                size_t *total);

/**
 * Full report as JSON.
 *
 * # Safety
 * `ctx` must be a live handle and `out` writable. Free the result with [`winger_string_free`].
 */
enum WingerStatus winger_report_json(const struct WingerContext *ctx, char **out);

/**
 * Serializes one object (`"dodecahedron"`, `"group"`, `"complex"`, `"form"`, `"characters"`, `"hom"`,
 * `"monodromy"`, `"cosets"` or `"cusps"`).
 *
 * # Safety
 * `ctx` must be a live handle, `object` a NUL-terminated string and `out` writable.
 * Free the result with [`winger_string_free`].
 */
enum WingerStatus winger_emit(const struct WingerContext *ctx,
                              const char *object,
                              enum WingerFormat format,
                              char **out);

/**
 * Writes `[a, b, c, d]` of the requested local monodromy, row-major, in the given basis convention.
 *
 * # Safety
 * `ctx` must be a live handle and `out` must point to four writable `int64_t`.
 */
enum WingerStatus winger_monodromy(const struct WingerContext *ctx,
                                   enum WingerMatrix which,
                                   enum WingerConvention conv,
                                   int64_t *out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library that was not freed yet.
 */
void winger_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WINGER_H */
