#include <stdio.h>
#include "spantree.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s\n", #cond); return 1; } } while (0)

int main(void) {
    SpGraph *g = NULL;
    CHECK(sp_graph_build_gd(4, &g) == SP_STATUS_OK);
    size_t n = 0, m = 0, sigma = 0, kappa = 0;
    CHECK(sp_graph_counts(g, &n, &m) == SP_STATUS_OK && n == 15 && m == 30);
    CHECK(sp_sigma(g, &sigma) == SP_STATUS_OK && sigma == 1);
    CHECK(sp_edge_connectivity(g, &kappa) == SP_STATUS_OK && kappa == 2);
    double l2 = 0.0;
    CHECK(sp_lambda2(g, &l2) == SP_STATUS_OK && l2 > 3.568 && l2 < 3.570);
    sp_graph_free(g);

    CHECK(sp_graph_build_hd(2, &g) == SP_STATUS_INVALID_ARGUMENT);
    CHECK(sp_last_error() != NULL);
    printf("ok %s\n", sp_version());
    return 0;
}
