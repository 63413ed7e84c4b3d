/* walkgain C API — generated by cbindgen, do not edit. */

#ifndef WALKGAIN_H
#define WALKGAIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes; the numeric values of `Parse`, `Domain`, `NonConvergence`
// and `ResourceCap` match the CLI exit codes.
typedef enum WgStatus {
  WgStatus_Ok = 0,
  WgStatus_NullArgument = 1,
  WgStatus_Parse = 2,
  WgStatus_Domain = 3,
  WgStatus_NonConvergence = 4,
  WgStatus_ResourceCap = 5,
  WgStatus_InvalidUtf8 = 6,
  WgStatus_BufferTooSmall = 7,
} WgStatus;

// Centrality selector for [`wg_centrality`].
typedef enum WgMetric {
  WgMetric_Degree = 0,
  WgMetric_GeometricGain = 1,
  WgMetric_ExponentialGain = 2,
  WgMetric_Katz = 3,
  WgMetric_Eigenvector = 4,
  WgMetric_PageRank = 5,
  WgMetric_Communicability = 6,
} WgMetric;

// Opaque graph handle.
typedef struct WgGraph WgGraph;

// Opaque score-vector handle; values are indexed by internal node index.
typedef struct WgScores WgScores;

// Spectral radius estimate.
typedef struct WgSpectralEstimate {
  double lambda1;
  uint64_t iterations;
  double residual;
  bool converged;
} WgSpectralEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the last error message for this thread into `buffer` (NUL
// terminated, truncated to `capacity`). Returns the full length of the
// message including the terminator, or 0 when no error is recorded;
// call with a null buffer to query the required capacity.
//
// # Safety
// `buffer` must be null or point to at least `capacity` writable bytes.
uintptr_t wg_last_error_message(char *buffer, uintptr_t capacity);

// Static version string of the underlying library.
const char *wg_version(void);

// Load an undirected graph from an edge-list file (KONECT or plain
// two-column dialect). On success `*out_graph` owns the handle.
//
// # Safety
// `path` must be a valid NUL-terminated string; `out_graph` must be a
// valid writable pointer.
enum WgStatus wg_graph_load_path(const char *path, struct WgGraph **out_graph);

// Release a graph handle. Null is a no-op.
//
// # Safety
// `graph` must have come from `wg_graph_load_path` and not be freed twice.
void wg_graph_free(struct WgGraph *graph);

// Number of nodes; 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
uint64_t wg_graph_node_count(const struct WgGraph *graph);

// Number of undirected edges; 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
uint64_t wg_graph_edge_count(const struct WgGraph *graph);

// Original label of the node at `index`, copied NUL-terminated into
// `buffer`. `*written` receives the required capacity.
//
// # Safety
// Pointer arguments must be valid; `buffer` must hold `capacity` bytes.
enum WgStatus wg_graph_node_label(const struct WgGraph *graph,
                                  uint64_t index,
                                  char *buffer,
                                  uintptr_t capacity,
                                  uintptr_t *written);

// Hex fingerprint binding outputs to this graph.
//
// # Safety
// Pointer arguments must be valid; `buffer` must hold `capacity` bytes.
enum WgStatus wg_graph_fingerprint(const struct WgGraph *graph,
                                   char *buffer,
                                   uintptr_t capacity,
                                   uintptr_t *written);

// Power-iteration estimate of the spectral radius. Pass NaN for `tol` or 0
// for `max_iters` to use the defaults (1e-10, 10000). Non-convergence is
// reported in the estimate, not as an error.
//
// # Safety
// `graph` and `out_estimate` must be valid pointers.
enum WgStatus wg_spectral_radius(const struct WgGraph *graph,
                                 double tol,
                                 uint64_t max_iters,
                                 struct WgSpectralEstimate *out_estimate);

// Compute a centrality. Pass NaN for `delta`, `alpha` or `tol` and 0 for
// `k_max` to use the metric's defaults (`delta` defaults to 1/(2λ₁)).
// On success `*out_scores` owns the handle.
//
// # Safety
// `graph` and `out_scores` must be valid pointers.
enum WgStatus wg_centrality(const struct WgGraph *graph,
                            enum WgMetric metric,
                            double delta,
                            double alpha,
                            double tol,
                            uint64_t k_max,
                            struct WgScores **out_scores);

// Number of scores in the handle; 0 for null.
//
// # Safety
// `scores` must be null or a live handle.
uint64_t wg_scores_len(const struct WgScores *scores);

// Copy all scores (node-index order) into `buffer`, which must hold
// exactly `len == wg_scores_len(scores)` doubles.
//
// # Safety
// `scores` must be a live handle; `buffer` must hold `len` doubles.
enum WgStatus wg_scores_copy(const struct WgScores *scores, double *buffer, uintptr_t len);

// Release a scores handle. Null is a no-op.
//
// # Safety
// `scores` must have come from `wg_centrality` and not be freed twice.
void wg_scores_free(struct WgScores *scores);

// Crossover delta for an eigenvalue: the δ at which the geometric and
// exponential spectrum transforms coincide.
//
// # Safety
// Out-pointers must be valid.
enum WgStatus wg_crossover_delta(double lambda, double *out_delta, bool *out_admissible);

// Spearman rank correlation with fractional tie ranks over two arrays of
// length `len`.
//
// # Safety
// `a` and `b` must point to `len` doubles; `out_rho` must be valid.
enum WgStatus wg_spearman_rho(const double *a, const double *b, uintptr_t len, double *out_rho);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WALKGAIN_H */
