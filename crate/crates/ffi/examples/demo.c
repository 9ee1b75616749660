#include <stdio.h>
#include "puptent.h"

int main(void) {
    PtTorus *t = NULL;
    if (pt_torus_new(0.25, 1.0, 0.01, PT_MODE_SOLVED, &t) != PT_STATUS_OK) {
        fprintf(stderr, "error: %s\n", pt_last_error());
        return 1;
    }
    double v[24], theta;
    PtEmbedded embedded;
    bool matches;
    size_t hull;
    pt_torus_vertices(t, v);
    pt_torus_theta(t, &theta);
    pt_torus_embedding(t, &embedded, &matches);
    pt_torus_hull_triangle_count(t, &hull);
    printf("puptent %s\n", pt_version());
    printf("P0 = (%.17g, %.17g, %.17g)\n", v[0], v[1], v[2]);
    printf("theta = %.3e embedded = %d matches = %d hull = %zu\n", theta, (int)embedded, (int)matches, hull);
    pt_torus_free(t);

    PtStatus s = pt_torus_new(0.9, 1.0, 0.0, PT_MODE_GOLDEN, &t);
    printf("outside: status = %d (%s)\n", (int)s, pt_last_error());
    return embedded == PT_EMBEDDED_YES && matches && hull == 6 && s == PT_STATUS_OUTSIDE_DOMAIN ? 0 : 1;
}
