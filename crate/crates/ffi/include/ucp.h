#ifndef UCP_H
#define UCP_H

/* Generated by cbindgen from src/lib.rs; regenerate instead of editing. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum UcpStatus {
  UCP_STATUS_OK = 0,
  UCP_STATUS_NULL_POINTER = 1,
  UCP_STATUS_INVALID_UTF8 = 2,
  UCP_STATUS_PARSE_ERROR = 3,
  UCP_STATUS_INVALID_ARGUMENT = 4,
  UCP_STATUS_TOO_LARGE = 5,
  UCP_STATUS_PANIC = 6,
} UcpStatus;

// Graph reductions reachable from C.
typedef enum UcpGraphReduction {
  // `param_a` colors; `param_b` unused.
  UCP_GRAPH_REDUCTION_COLORING = 0,
  // Subgraph size `param_a` with at least `param_b` edges.
  UCP_GRAPH_REDUCTION_FDCS = 1,
  // Cut budget `param_a`; `param_b` unused.
  UCP_GRAPH_REDUCTION_BISECTION = 2,
  // `param_a` cliques; `param_b` unused.
  UCP_GRAPH_REDUCTION_CLIQUE_COVER = 3,
} UcpGraphReduction;

// Opaque decision instance.
typedef struct UcpInstance UcpInstance;

// Opaque exact-solver result.
typedef struct UcpSolveResult UcpSolveResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses an instance document. On success `*out` owns a new handle.
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum UcpStatus ucp_instance_from_json(const char *json, struct UcpInstance **out);

// Serializes an instance; release `*out` with [`ucp_string_free`].
//
// # Safety
// `inst` must come from this library and `out` must be valid.
enum UcpStatus ucp_instance_to_json(const struct UcpInstance *inst, char **out);

// Number of points, or 0 for a null handle.
//
// # Safety
// `inst` must be null or come from this library.
size_t ucp_instance_n(const struct UcpInstance *inst);

// Number of blocks, or 0 for a null handle.
//
// # Safety
// `inst` must be null or come from this library.
size_t ucp_instance_k(const struct UcpInstance *inst);

// # Safety
// `inst` must be null or a handle from this library not yet freed.
void ucp_instance_free(struct UcpInstance *inst);

// Reduces a graph given as `num_edges` pairs of 0-based vertices in
// `edges` (length `2 * num_edges`). `kind` is a [`UcpGraphReduction`] value.
//
// # Safety
// `edges` must hold `2 * num_edges` values (it may be null when
// `num_edges` is 0) and `out` must be valid.
enum UcpStatus ucp_graph_reduce(int kind,
                                size_t n,
                                const size_t *edges,
                                size_t num_edges,
                                size_t param_a,
                                size_t param_b,
                                struct UcpInstance **out);

// Utility of the partition given by `labels` (one per point); release
// `*value` with [`ucp_string_free`].
//
// # Safety
// `labels` must hold `len` values and the pointers must be valid.
enum UcpStatus ucp_evaluate(const struct UcpInstance *inst,
                            const size_t *labels,
                            size_t len,
                            char **value);

// Enumerates every partition; `*out` owns the result.
//
// # Safety
// `inst` must come from this library and `out` must be valid.
enum UcpStatus ucp_solve_exact(const struct UcpInstance *inst, struct UcpSolveResult **out);

// Sets `*yes` to 1 when the optimum reaches the threshold, else 0.
//
// # Safety
// `inst` must come from this library and `yes` must be valid.
enum UcpStatus ucp_decide(const struct UcpInstance *inst, int *yes);

// Optimum value; release `*value` with [`ucp_string_free`].
//
// # Safety
// `result` must come from this library and `value` must be valid.
enum UcpStatus ucp_result_optimum(const struct UcpSolveResult *result, char **value);

// Copies the optimal block labels into `labels`, which must hold `len`
// entries with `len` equal to the number of points.
//
// # Safety
// `result` must come from this library and `labels` must hold `len` values.
enum UcpStatus ucp_result_argmax(const struct UcpSolveResult *result, size_t *labels, size_t len);

// Number of partitions scored, saturating at `UINT64_MAX`; 0 for null.
//
// # Safety
// `result` must be null or come from this library.
uint64_t ucp_result_evaluations(const struct UcpSolveResult *result);

// # Safety
// `result` must be null or a handle from this library not yet freed.
void ucp_result_free(struct UcpSolveResult *result);

// Message for the last failed call on this thread, empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *ucp_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void ucp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UCP_H */
