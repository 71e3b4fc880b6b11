#include "minlen.h"

/* Compiled as C to keep the public header C-clean. */
int minlen_header_check_c(void)
{
    minlen_system* sys = 0;
    minlen_level level;
    int ok = 0;
    if (minlen_system_hydrogen(510998.95, 1.0 / 137.035999, &sys) == MINLEN_OK) {
        ok = minlen_level_analytic(sys, 0.0, 1, 0, &level) == MINLEN_OK && level.delta_e_ev == 0.0;
        minlen_system_free(sys);
    }
    return ok;
}
