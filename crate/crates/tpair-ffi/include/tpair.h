#ifndef TPAIR_H
#define TPAIR_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Non-negative values are outcomes, negative values errors.
 */
enum TpairStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  TpairStatus_Ok = 0,
  TpairStatus_NotRealizable = 1,
  TpairStatus_Exhausted = 2,
  /**
   * A pointer argument was NULL or a size argument out of range.
   */
  TpairStatus_ErrInvalidArgument = -1,
  /**
   * Text input could not be parsed.
   */
  TpairStatus_ErrParse = -2,
  /**
   * Demand and host vertex counts differ.
   */
  TpairStatus_ErrDimensionMismatch = -3,
  /**
   * Family precondition violated (parity / divisibility).
   */
  TpairStatus_ErrFamily = -4,
  /**
   * Internal error; should not happen.
   */
  TpairStatus_ErrInternal = -5,
};
#ifndef __cplusplus
typedef int32_t TpairStatus;
#endif // __cplusplus

typedef struct TpairDemand TpairDemand;

typedef struct TpairHost TpairHost;

typedef struct TpairPaths TpairPaths;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a complete host graph on `n` vertices.
 *
 * # Safety
 * `out` must be a valid pointer to a `TpairHost*` slot.
 */
TpairStatus tpair_host_complete(uint32_t n, struct TpairHost **out);

/**
 * Create a complete bipartite host graph with sides `a` and `b`.
 *
 * # Safety
 * `out` must be a valid pointer to a `TpairHost*` slot.
 */
TpairStatus tpair_host_bipartite(uint32_t a, uint32_t b, struct TpairHost **out);

/**
 * Parse a host from the text format (`complete n` | `bipartite a b` |
 * `explicit n` plus edge lines).
 *
 * # Safety
 * `text` must be a NUL-terminated UTF-8 string; `out` a valid slot.
 */
TpairStatus tpair_host_parse(const char *text, struct TpairHost **out);

/**
 * # Safety
 * `host` must come from a `tpair_host_*` constructor and not be freed twice.
 */
void tpair_host_free(struct TpairHost *host);

/**
 * Parse a demand multigraph from the `.dem` text format.
 *
 * # Safety
 * `text` must be a NUL-terminated UTF-8 string; `out` a valid slot.
 */
TpairStatus tpair_demand_parse(const char *text, struct TpairDemand **out);

/**
 * Triangle demand family: multiplicity-q/2 triangles on vertex triples.
 * Requires 3 | n and even q.
 *
 * # Safety
 * `out` must be a valid slot.
 */
TpairStatus tpair_demand_triangle(uint32_t n, uint32_t q, struct TpairDemand **out);

/**
 * One-factor demand family: a perfect matching with multiplicity q.
 * Requires even n.
 *
 * # Safety
 * `out` must be a valid slot.
 */
TpairStatus tpair_demand_one_factor(uint32_t n, uint32_t q, struct TpairDemand **out);

/**
 * Bipartite one-factor family on vertex set 0..2n: the identity matching
 * with multiplicity n/3. Requires 3 | n.
 *
 * # Safety
 * `out` must be a valid slot.
 */
TpairStatus tpair_demand_bipartite_one_factor(uint32_t n, struct TpairDemand **out);

/**
 * # Safety
 * `demand` must come from a `tpair_demand_*` constructor, freed once.
 */
void tpair_demand_free(struct TpairDemand *demand);

/**
 * Multiplicity-weighted maximum degree Δ(D); negative on NULL.
 *
 * # Safety
 * `demand` must be a live demand handle.
 */
int64_t tpair_demand_max_degree(const struct TpairDemand *demand);

/**
 * Total number of demand edge instances e(D); negative on NULL.
 *
 * # Safety
 * `demand` must be a live demand handle.
 */
int64_t tpair_demand_edge_total(const struct TpairDemand *demand);

/**
 * Decide realizability. `max_path_len` 0 means the full n−1 cap,
 * `node_budget` 0 the default budget. On a realizable outcome and a
 * non-NULL `out_paths`, a certificate handle is stored there.
 * `out_nodes`, when non-NULL, receives the explored node count.
 *
 * # Safety
 * `host` and `demand` must be live handles; out pointers valid or NULL.
 */
TpairStatus tpair_solve(const struct TpairHost *host,
                        const struct TpairDemand *demand,
                        uint32_t max_path_len,
                        uint64_t node_budget,
                        struct TpairPaths **out_paths,
                        uint64_t *out_nodes);

/**
 * # Safety
 * `paths` must come from `tpair_solve`, freed once.
 */
void tpair_paths_free(struct TpairPaths *paths);

/**
 * Check a path system against host and demand. Returns `Ok` when valid,
 * `NotRealizable` when the verifier reports violations.
 *
 * # Safety
 * All handles must be live.
 */
TpairStatus tpair_verify(const struct TpairHost *host,
                         const struct TpairDemand *demand,
                         const struct TpairPaths *paths);

/**
 * Serialize a certificate to the PathSystem JSON format. NULL on error.
 *
 * # Safety
 * `demand` and `paths` must be live handles.
 */
char *tpair_paths_to_json(const struct TpairDemand *demand, const struct TpairPaths *paths);

/**
 * Counting-bound report for the triangle family as JSON. NULL when the
 * (n, q) preconditions fail.
 */
char *tpair_bounds_json(uint32_t n, uint32_t q);

/**
 * # Safety
 * `s` must be a string returned by this library, freed once.
 */
void tpair_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TPAIR_H */
