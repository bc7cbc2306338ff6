#ifndef TORIC_PICK_H
#define TORIC_PICK_H

/* Generated by cbindgen from the toric-pick-ffi crate. Do not edit. */

#include <stddef.h>
#include <stdint.h>

#define TP_IDENTITY_PICK 0

#define TP_IDENTITY_TODD 1

#define TP_IDENTITY_FACE_TODD 2

#define TP_IDENTITY_TETRAHEDRON 3

#define TP_IDENTITY_SIGNATURE 4

#define TP_IDENTITY_U_INDEPENDENCE 5

typedef enum TpStatus {
  TP_STATUS_OK = 0,
  TP_STATUS_IDENTITY_FAILS = 1,
  TP_STATUS_INVALID_INPUT = 2,
  TP_STATUS_NULL_POINTER = 3,
  TP_STATUS_UTF8 = 4,
  TP_STATUS_INTERNAL = 5,
} TpStatus;

/**
 * Opaque handle to a validated Delzant polytope.
 */
typedef struct TpPolytope TpPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a polytope file (JSON text) and checks that it is Delzant.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum TpStatus tp_polytope_from_json(const char *json, struct TpPolytope **out);

/**
 * # Safety
 * `p` must come from `tp_polytope_from_json` and not have been freed. Null is ignored.
 */
void tp_polytope_free(struct TpPolytope *p);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum TpStatus tp_polytope_dim(const struct TpPolytope *p, size_t *out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum TpStatus tp_polytope_num_facets(const struct TpPolytope *p, size_t *out);

/**
 * Runs one check (`TP_IDENTITY_*`) and writes its report as JSON. Returns
 * `IdentityFails` with the report written when the identity does not hold.
 *
 * # Safety
 * `p` must be a live handle; `out_json` must be writable.
 */
enum TpStatus tp_verify(const struct TpPolytope *p, uint32_t identity, char **out_json);

/**
 * Checks the twelve-dimensional Pontryagin-class identity.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum TpStatus tp_verify_agw(char **out_json);

/**
 * Chern number for the partition `parts[0..len]` of the dimension.
 *
 * # Safety
 * `p` must be a live handle; `parts` must point to `len` values; `out` must be writable.
 */
enum TpStatus tp_chern_number(const struct TpPolytope *p,
                              const uint32_t *parts,
                              size_t len,
                              int64_t *out);

/**
 * Number of lattice points in the polytope.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum TpStatus tp_count_points(const struct TpPolytope *p, uint64_t *out);

/**
 * # Safety
 * `s` must come from this library and not have been freed. Null is ignored.
 */
void tp_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *tp_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIC_PICK_H */
