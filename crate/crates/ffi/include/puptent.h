#ifndef PUPTENT_H
#define PUPTENT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Verdict of the embedding test.
typedef enum PtEmbedded {
  PT_EMBEDDED_NO = 0,
  PT_EMBEDDED_YES = 1,
  PT_EMBEDDED_DEGENERATE = 2,
} PtEmbedded;

// Generation mode of a torus.
typedef enum PtMode {
  PT_MODE_GOLDEN = 0,
  PT_MODE_DEFORMED = 1,
  PT_MODE_SOLVED = 2,
} PtMode;

// Result of every call.
typedef enum PtStatus {
  PT_STATUS_OK = 0,
  PT_STATUS_NULL_POINTER = 1,
  PT_STATUS_INVALID_ARGUMENT = 2,
  PT_STATUS_OUTSIDE_DOMAIN = 3,
  PT_STATUS_NOT_INTERIOR = 4,
  PT_STATUS_DEGENERATE = 5,
  PT_STATUS_NO_CONVERGENCE = 6,
  PT_STATUS_NOT_FLAT = 7,
  PT_STATUS_COMPUTATION = 8,
  PT_STATUS_PANIC = 9,
} PtStatus;

// Opaque torus with its analysis.
typedef struct PtTorus PtTorus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds the torus at `z = x + iy` in the given mode; `t` is ignored for the golden tent.
//
// # Safety
// `out` must be valid for writing one pointer. The handle must be released with `pt_torus_free`.
enum PtStatus pt_torus_new(double x, double y, double t, enum PtMode mode, struct PtTorus **out);

// Releases a handle; null is ignored.
//
// # Safety
// `torus` must come from `pt_torus_new` and not be used afterwards.
void pt_torus_free(struct PtTorus *torus);

// Writes the 8 vertices as 24 doubles `P0.x, P0.y, P0.z, P1.x, ...`.
//
// # Safety
// `torus` must be a live handle and `out` valid for 24 doubles.
enum PtStatus pt_torus_vertices(const struct PtTorus *torus, double *out);

// Writes the flatness defect; fails with `PT_STATUS_DEGENERATE` when an edge has collapsed.
//
// # Safety
// `torus` must be a live handle and `out` valid for one double.
enum PtStatus pt_torus_theta(const struct PtTorus *torus, double *out);

// Writes the embedding verdict and whether the sign list equals the reference.
//
// # Safety
// `torus` must be a live handle; `embedded` and `matches_reference` valid for one value each.
enum PtStatus pt_torus_embedding(const struct PtTorus *torus,
                                 enum PtEmbedded *embedded,
                                 bool *matches_reference);

// Number of convex-hull faces whose three vertices are torus vertices.
//
// # Safety
// `torus` must be a live handle and `out` valid for one `size_t`.
enum PtStatus pt_torus_hull_triangle_count(const struct PtTorus *torus, size_t *out);

// The full report as pretty JSON; release with `pt_string_free`.
//
// # Safety
// `torus` must be a live handle and `out` valid for writing one pointer.
enum PtStatus pt_torus_to_json(const struct PtTorus *torus, char **out);

// Releases a string from this library; null is ignored.
//
// # Safety
// `s` must come from `pt_torus_to_json` and not be used afterwards.
void pt_string_free(char *s);

// Message for the last failed call on this thread, or an empty string. Owned by the library.
const char *pt_last_error(void);

// Library version as a static string.
const char *pt_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PUPTENT_H */
