/* Minimal consumer of the walkgain C API.
 *
 * Build (after `cargo build -p walkgain-ffi --release`):
 *   cc -std=c99 -I crates/ffi/include crates/ffi/examples/demo.c \
 *      target/release/libwalkgain_ffi.a -lm -lpthread -ldl -o demo
 *   ./demo path/to/edges.txt
 */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "walkgain.h"

static void fail(const char *what) {
    char msg[256];
    wg_last_error_message(msg, sizeof msg);
    fprintf(stderr, "%s: %s\n", what, msg);
    exit(1);
}

int main(int argc, char **argv) {
    if (argc != 2) {
        fprintf(stderr, "usage: %s <edge-list>\n", argv[0]);
        return 2;
    }

    WgGraph *graph = NULL;
    if (wg_graph_load_path(argv[1], &graph) != WgStatus_Ok)
        fail("load");
    printf("nodes: %llu, edges: %llu\n",
           (unsigned long long)wg_graph_node_count(graph),
           (unsigned long long)wg_graph_edge_count(graph));

    WgSpectralEstimate est;
    if (wg_spectral_radius(graph, NAN, 0, &est) != WgStatus_Ok)
        fail("spectral");
    printf("lambda1: %.6f (%llu iterations, converged: %s)\n", est.lambda1,
           (unsigned long long)est.iterations, est.converged ? "yes" : "no");

    /* geometric potential gain at the default delta = 1/(2*lambda1) */
    WgScores *scores = NULL;
    if (wg_centrality(graph, WgMetric_GeometricGain, NAN, NAN, NAN, 0, &scores) != WgStatus_Ok)
        fail("centrality");
    size_t n = (size_t)wg_scores_len(scores);
    double *values = malloc(n * sizeof *values);
    wg_scores_copy(scores, values, n);

    size_t show = n < 5 ? n : 5;
    for (size_t i = 0; i < show; i++) {
        char label[64];
        wg_graph_node_label(graph, i, label, sizeof label, NULL);
        printf("  %s -> %.6f\n", label, values[i]);
    }

    free(values);
    wg_scores_free(scores);
    wg_graph_free(graph);
    return 0;
}
