#ifndef TFSR_H
#define TFSR_H

#include <stdbool.h>
#include <stddef.h>

typedef enum TfsrStatus {
  TFSR_STATUS_OK = 0,
  TFSR_STATUS_VERIFICATION_FAILED = 1,
  TFSR_STATUS_INVALID_INPUT = 2,
  TFSR_STATUS_DOMAIN_ERROR = 3,
  TFSR_STATUS_NULL_POINTER = 4,
  TFSR_STATUS_INDEX_OUT_OF_RANGE = 5,
  TFSR_STATUS_PANIC = 6,
} TfsrStatus;

typedef enum TfsrSuite {
  TFSR_SUITE_IDENTITIES = 0,
  TFSR_SUITE_CASES = 1,
  TFSR_SUITE_ALL = 2,
} TfsrSuite;

// The bound on `a` at one density.
typedef struct TfsrBound TfsrBound;

// A weighted triangle-free graph.
typedef struct TfsrGraph TfsrGraph;

// Survivors of a search, one results-file line each.
typedef struct TfsrSearchResults TfsrSearchResults;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failed call on this thread, or null. The
// pointer stays valid until the next call into the library on this thread.
const char *tfsr_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed before.
void tfsr_string_free(char *s);

// Parses one graph6 line into a uniformly weighted graph.
//
// # Safety
// `graph6` must be a NUL-terminated string and `out` writable.
enum TfsrStatus tfsr_graph_from_graph6(const char *graph6, struct TfsrGraph **out);

// Builds a catalog graph such as `petersen`, `clebsch` or `kneser-3`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` writable.
enum TfsrStatus tfsr_graph_from_catalog(const char *name, struct TfsrGraph **out);

// # Safety
// `g` must be null or a live handle from this library.
void tfsr_graph_free(struct TfsrGraph *g);

// Replaces the vertex weights with comma-separated rationals summing to 1.
//
// # Safety
// `g` must be a live handle and `weights` a NUL-terminated string.
enum TfsrStatus tfsr_graph_set_weights(struct TfsrGraph *g, const char *weights);

// # Safety
// `g` must be a live handle and `out` writable.
enum TfsrStatus tfsr_graph_vertex_count(const struct TfsrGraph *g, size_t *out);

// Edge density as `p/q`.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum TfsrStatus tfsr_graph_rho(const struct TfsrGraph *g, char **out);

// Minimum common-neighbourhood measure over non-adjacent pairs, as `p/q`.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum TfsrStatus tfsr_graph_a_value(const struct TfsrGraph *g, char **out);

// # Safety
// `g` must be a live handle and `out` writable.
enum TfsrStatus tfsr_graph_to_graph6(const struct TfsrGraph *g, char **out);

// Evaluates the bound at `rho` (a decimal or `p/q` in `[0, 1/2)`).
//
// # Safety
// `rho` must be a NUL-terminated string and `out` writable.
enum TfsrStatus tfsr_bound_eval(const char *rho, struct TfsrBound **out);

// # Safety
// `b` must be null or a live handle from this library.
void tfsr_bound_free(struct TfsrBound *b);

// Label of the active piece, e.g. `Krein` or `rho/3|2rho-1/2`.
//
// # Safety
// `b` must be a live handle and `out` writable.
enum TfsrStatus tfsr_bound_piece(const struct TfsrBound *b, char **out);

// `value=p/q (exact)` or `value=[lo,hi]` with `hi - lo <= width`.
//
// # Safety
// `b` must be a live handle, `width` a NUL-terminated string, `out` writable.
enum TfsrStatus tfsr_bound_describe(const struct TfsrBound *b, const char *width, char **out);

// Exact rational value as `p/q`, or `DomainError` when the value is
// irrational.
//
// # Safety
// `b` must be a live handle and `out` writable.
enum TfsrStatus tfsr_bound_exact(const struct TfsrBound *b, char **out);

// Optimal regular weights as `status=`, `rho_G=`, `a*=`, `weights=` lines.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum TfsrStatus tfsr_optimize_weights(const struct TfsrGraph *g, char **out);

// Runs the flag identities and/or the case analysis at every minimizing
// pair; `*passed` is set even when a check fails.
//
// # Safety
// `g` must be a live handle and `passed` writable.
enum TfsrStatus tfsr_verify(const struct TfsrGraph *g, enum TfsrSuite suite, bool *passed);

// Runs a search from config text (`key = value` lines).
//
// # Safety
// `config` must be a NUL-terminated string and `out` writable.
enum TfsrStatus tfsr_search(const char *config, struct TfsrSearchResults **out);

// # Safety
// `r` must be a live handle and `out` writable.
enum TfsrStatus tfsr_search_results_len(const struct TfsrSearchResults *r, size_t *out);

// Result `index` as `graph6 TAB rho TAB a TAB weights`.
//
// # Safety
// `r` must be a live handle and `out` writable.
enum TfsrStatus tfsr_search_results_line(const struct TfsrSearchResults *r,
                                         size_t index,
                                         char **out);

// # Safety
// `r` must be null or a live handle from this library.
void tfsr_search_results_free(struct TfsrSearchResults *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TFSR_H */
