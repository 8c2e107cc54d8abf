#ifndef QSCHUBERT_H
#define QSCHUBERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define QS_OK 0

/**
 * A required pointer argument was null.
 */
#define QS_ERR_NULL 1

/**
 * An argument was malformed or out of range.
 */
#define QS_ERR_INVALID 2

/**
 * The computation failed.
 */
#define QS_ERR_COMPUTE 3

/**
 * A Rust panic was caught at the boundary.
 */
#define QS_ERR_PANIC 4

/**
 * Opaque handle to a quantum cohomology ring.
 */
typedef struct QsRing QsRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the ring for `n` (1..=6) and stores a new handle in `*out`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
int32_t qs_ring_new(uint32_t n, struct QsRing **out);

/**
 * Releases a handle from [`qs_ring_new`]; null is ignored.
 *
 * # Safety
 * `ring` must be null or a handle not yet freed.
 */
void qs_ring_free(struct QsRing *ring);

/**
 * Writes `n!`, the rank of the ring, to `*out`.
 *
 * # Safety
 * `ring` must be a live handle and `out` valid for writes.
 */
int32_t qs_ring_dim(const struct QsRing *ring, size_t *out);

/**
 * JSON with the classical, quantum and double Schubert polynomials of the
 * permutation `w` (one-line notation such as `"3,2,1"`).
 *
 * # Safety
 * `ring` must be a live handle, `w` a NUL-terminated string and `out`
 * valid for writes.
 */
int32_t qs_schubert_json(const struct QsRing *ring, const char *w, char **out);

/**
 * JSON object mapping each `w` with `c̃_{uv}^w ≠ 0` to that polynomial.
 *
 * # Safety
 * As for [`qs_schubert_json`].
 */
int32_t qs_structconst_json(const struct QsRing *ring, const char *u, const char *v, char **out);

/**
 * The residue pairing `⟨S̃_u S̃_v⟩` as a polynomial string.
 *
 * # Safety
 * As for [`qs_structconst_json`].
 */
int32_t qs_pairing(const struct QsRing *ring, const char *u, const char *v, char **out);

/**
 * Runs every check suite for `n` at truncation order `trunc` over the
 * support `support` (`"all"`, `"len<=K"` or a `;`-separated list; null
 * means all). Writes the JSON report to `*out` and whether every check
 * passed to `*passed`.
 *
 * # Safety
 * `support` must be null or NUL-terminated; `out` and `passed` must be
 * valid for writes.
 */
int32_t qs_verify_all_json(uint32_t n,
                           uint32_t trunc,
                           const char *support,
                           char **out,
                           bool *passed);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void qs_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into this library from the same thread.
 */
const char *qs_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSCHUBERT_H */
