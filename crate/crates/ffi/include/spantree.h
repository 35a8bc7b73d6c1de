#ifndef SPANTREE_H
#define SPANTREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_POINTER = 1,
  SP_STATUS_INVALID_ARGUMENT = 2,
  SP_STATUS_PARSE = 3,
  SP_STATUS_IO = 4,
  SP_STATUS_CONSTRUCTION = 5,
  SP_STATUS_BUFFER_TOO_SMALL = 6,
  SP_STATUS_NUMERICAL = 7,
  SP_STATUS_PANIC = 8,
} SpStatus;

/**
 * Opaque graph handle.
 */
typedef struct SpGraph SpGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a graph on `n` vertices from `edge_count` pairs stored flat in
 * `edges` (`u0, v0, u1, v1, ...`).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable `size_t` values (it may be
 * null when `edge_count` is 0) and `out` must be valid for writes.
 */
enum SpStatus sp_graph_from_edges(size_t n,
                                  const size_t *edges,
                                  size_t edge_count,
                                  struct SpGraph **out);

/**
 * Reads an edge-list file (`n m` header, then one `u v` per line).
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` valid for writes.
 */
enum SpStatus sp_graph_read(const char *path, struct SpGraph **out);

/**
 * The three-block family with `σ = 1`, `d >= 4`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SpStatus sp_graph_build_gd(size_t d, struct SpGraph **out);

/**
 * The five-block family with `σ = 2`, `d >= 6`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SpStatus sp_graph_build_hd(size_t d, struct SpGraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle from this library that was not yet freed.
 */
void sp_graph_free(struct SpGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `n` and `m` must be valid for writes.
 */
enum SpStatus sp_graph_counts(const struct SpGraph *g, size_t *n, size_t *m);

/**
 * Second largest adjacency eigenvalue; needs at least two vertices.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum SpStatus sp_lambda2(const struct SpGraph *g, double *out);

/**
 * Maximum number of edge-disjoint spanning trees. The packing certificate
 * is checked before returning.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum SpStatus sp_sigma(const struct SpGraph *g, size_t *out);

/**
 * Edge connectivity; needs at least two vertices.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum SpStatus sp_edge_connectivity(const struct SpGraph *g, size_t *out);

/**
 * Adjacency eigenvalues in descending order. `*len` is always set to the
 * vertex count; if `capacity` is smaller nothing is copied and
 * `SP_STATUS_BUFFER_TOO_SMALL` is returned. `values` may be null when
 * `capacity` is 0.
 *
 * # Safety
 * `values` must have room for `capacity` doubles and `len` must be valid for
 * writes.
 */
enum SpStatus sp_spectrum(const struct SpGraph *g, double *values, size_t capacity, size_t *len);

/**
 * Full analysis report as pretty JSON. Free the string with
 * [`sp_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum SpStatus sp_analyze_json(const struct SpGraph *g, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library that was not yet freed.
 */
void sp_string_free(char *s);

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *sp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPANTREE_H */
