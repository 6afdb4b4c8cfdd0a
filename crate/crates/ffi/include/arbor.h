#ifndef ARBOR_H
#define ARBOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Inversion route for `arbor_comm_invert` and `arbor_free_invert`.
typedef enum ArborInvertPath {
  // Identity linear term, explicit tree sums.
  ARBOR_INVERT_PATH_TREE = 0,
  // Identity linear term, memoized recursion.
  ARBOR_INVERT_PATH_RECURSIVE = 1,
  // Invertible linear term, alternating tree sums.
  ARBOR_INVERT_PATH_ALTERNATING = 2,
  // Invertible linear term, reduction to the identity case.
  ARBOR_INVERT_PATH_REDUCTION = 3,
} ArborInvertPath;

// Result codes.
typedef enum ArborStatus {
  ARBOR_STATUS_OK = 0,
  ARBOR_STATUS_INVALID_ARGUMENT = 1,
  ARBOR_STATUS_DIMENSION_MISMATCH = 2,
  ARBOR_STATUS_NONZERO_CONSTANT_TERM = 3,
  ARBOR_STATUS_NON_IDENTITY_LINEAR_TERM = 4,
  ARBOR_STATUS_NOT_INVERTIBLE = 5,
  ARBOR_STATUS_MISSING_WEIGHT = 6,
  ARBOR_STATUS_RESOURCE_LIMIT = 7,
  ARBOR_STATUS_PARSE_ERROR = 8,
  ARBOR_STATUS_NULL_POINTER = 9,
  ARBOR_STATUS_PANIC = 10,
} ArborStatus;

// Opaque commutative map.
typedef struct ArborCommMap ArborCommMap;

// Opaque free map.
typedef struct ArborFreeMap ArborFreeMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread; empty if none. Owned by the
// library and valid until the next call on this thread.
const char *arbor_last_error_message(void);

// Releases a string returned by the library.
//
// # Safety
// `s` must come from this library and not have been freed.
void arbor_string_free(char *s);

// Parses a commutative map.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum ArborStatus arbor_comm_map_from_json(const char *json, struct ArborCommMap **out);

// Serializes a commutative map; free the result with `arbor_string_free`.
//
// # Safety
// `map` must be a live handle; `out` must be writable.
enum ArborStatus arbor_comm_map_to_json(const struct ArborCommMap *map, char **out);

// # Safety
// `map` must come from this library and not have been freed.
void arbor_comm_map_free(struct ArborCommMap *map);

// `F ∘ G` by substitution, or by tree sums when `fdb` is nonzero.
//
// # Safety
// `f` and `g` must be live handles; `out` must be writable.
enum ArborStatus arbor_comm_compose(const struct ArborCommMap *f,
                                    const struct ArborCommMap *g,
                                    bool fdb,
                                    struct ArborCommMap **out);

// Compositional inverse.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum ArborStatus arbor_comm_invert(const struct ArborCommMap *f,
                                   enum ArborInvertPath path,
                                   struct ArborCommMap **out);

// Nonlinear coefficients of the inverse of `X - H`, negated.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum ArborStatus arbor_comm_phi(const struct ArborCommMap *h, struct ArborCommMap **out);

// Whether `J(H)^m` vanishes, checked through degree `bound`.
//
// # Safety
// `h` must be a live handle; `nilpotent` must be writable.
enum ArborStatus arbor_fern_check(const struct ArborCommMap *h,
                                  uintptr_t m,
                                  uintptr_t bound,
                                  bool use_fern_sums,
                                  bool *nilpotent);

// Parses a free map.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum ArborStatus arbor_free_map_from_json(const char *json, struct ArborFreeMap **out);

// Serializes a free map; free the result with `arbor_string_free`.
//
// # Safety
// `map` must be a live handle; `out` must be writable.
enum ArborStatus arbor_free_map_to_json(const struct ArborFreeMap *map, char **out);

// # Safety
// `map` must come from this library and not have been freed.
void arbor_free_map_free(struct ArborFreeMap *map);

// Free composition `F ∘ G` by substitution.
//
// # Safety
// `f` and `g` must be live handles; `out` must be writable.
enum ArborStatus arbor_free_compose(const struct ArborFreeMap *f,
                                    const struct ArborFreeMap *g,
                                    struct ArborFreeMap **out);

// Free compositional inverse.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum ArborStatus arbor_free_invert(const struct ArborFreeMap *f,
                                   enum ArborInvertPath path,
                                   struct ArborFreeMap **out);

// Number of proper trees on `k` labelled leaves (even outdegrees only when
// `even` is set). Fails if the series and enumeration counts disagree or the
// count does not fit.
//
// # Safety
// `out` must be writable.
enum ArborStatus arbor_count_proper_trees(uintptr_t k, bool even, uint64_t *out);

// Library version, static storage.
const char *arbor_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARBOR_H */
