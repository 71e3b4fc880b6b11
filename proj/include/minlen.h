/*
 * minlen: first-order energy shifts of central-potential bound states under a
 * minimal-length deformed Heisenberg algebra (beta' = 2 beta).
 *
 * Units: energies in eV, lengths in eV^-1 (hbar = c = 1) unless a function name
 * says `_fm`. Every call returns a minlen_status; on failure the message is
 * available from minlen_last_error() on the calling thread until the next call.
 * Handles are opaque and must be released with the matching _free function.
 */
#ifndef MINLEN_H
#define MINLEN_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MINLEN_BUILDING_LIBRARY)
#    define MINLEN_API __declspec(dllexport)
#  else
#    define MINLEN_API __declspec(dllimport)
#  endif
#else
#  define MINLEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum minlen_status {
    MINLEN_OK = 0,
    MINLEN_ERR_NULL_ARGUMENT = 1,
    MINLEN_ERR_DOMAIN = 2,        /* argument outside the mathematical domain */
    MINLEN_ERR_USAGE = 3,         /* invalid quantum numbers, bad file, wrong system */
    MINLEN_ERR_NUMERICAL = 4,     /* non-convergence */
    MINLEN_ERR_NO_BOUND_STATE = 5,
    MINLEN_ERR_INSENSITIVE = 6,   /* transition blind to the deformation */
    MINLEN_ERR_OUT_OF_RANGE = 7,  /* index past the end of a result handle */
    MINLEN_ERR_INTERNAL = 8
} minlen_status;

typedef enum minlen_system_kind {
    MINLEN_SYSTEM_HYDROGEN = 0,
    MINLEN_SYSTEM_OSCILLATOR = 1,
    MINLEN_SYSTEM_TABULATED = 2
} minlen_system_kind;

typedef enum minlen_method {
    MINLEN_METHOD_ANALYTIC = 1,
    MINLEN_METHOD_NUMERICAL = 2,
    MINLEN_METHOD_BOTH = 3
} minlen_method;

typedef enum minlen_spacing {
    MINLEN_SPACING_UNIFORM = 0,
    MINLEN_SPACING_LOG_UNIFORM = 1
} minlen_spacing;

typedef struct minlen_system minlen_system;
typedef struct minlen_spectrum minlen_spectrum;
typedef struct minlen_blocks minlen_blocks;
typedef struct minlen_state minlen_state;
typedef struct minlen_report minlen_report;

MINLEN_API const char* minlen_version(void);
MINLEN_API const char* minlen_last_error(void);
MINLEN_API const char* minlen_status_name(minlen_status status);

/* ---- constants and units ------------------------------------------------ */

typedef struct minlen_constants {
    double electron_mass_ev;
    double fine_structure;
    double hbar_c_mev_fm;
    double planck_h_ev_s;
} minlen_constants;

MINLEN_API void minlen_get_constants(minlen_constants* out);
MINLEN_API minlen_status minlen_length_to_natural(double fm, double* out_inverse_ev);
MINLEN_API minlen_status minlen_natural_to_length(double inverse_ev, double* out_fm);
MINLEN_API minlen_status minlen_frequency_to_energy(double khz, double* out_ev);

/* beta (eV^-2) <-> minimal length delta_x0 = sqrt(5 beta) (fm) */
MINLEN_API minlen_status minlen_beta_from_delta_x0_fm(double delta_x0_fm, double* out_beta);
MINLEN_API minlen_status minlen_delta_x0_fm_from_beta(double beta, double* out_fm);

/* ---- systems ------------------------------------------------------------ */

MINLEN_API minlen_status minlen_system_hydrogen(double mass_ev, double alpha, minlen_system** out);
MINLEN_API minlen_status minlen_system_oscillator(double mass_ev, double omega_ev, minlen_system** out);
/* Two-column `r_fm V_eV` file. length_scale_fm <= 0 picks the table extent / 40. */
MINLEN_API minlen_status minlen_system_tabulated_file(const char* path, double mass_ev, double length_scale_fm,
                                                      minlen_system** out);
/* Same, from arrays (radii in fm). */
MINLEN_API minlen_status minlen_system_tabulated(const double* radii_fm, const double* values_ev, size_t count,
                                                 double mass_ev, double length_scale_fm, minlen_system** out);
MINLEN_API void minlen_system_free(minlen_system* system);
MINLEN_API minlen_status minlen_system_get_kind(const minlen_system* system, minlen_system_kind* out);

/* ---- single levels ------------------------------------------------------ */

/* n is principal for hydrogen and radial (node count) otherwise. */
typedef struct minlen_level {
    int n;
    int l;
    int multiplicity;
    double e0_ev;
    double delta_e_ev;
    double e_total_ev;
} minlen_level;

MINLEN_API minlen_status minlen_level_analytic(const minlen_system* system, double beta, int n, int l,
                                               minlen_level* out);
MINLEN_API minlen_status minlen_level_numerical(const minlen_system* system, double beta, int n, int l,
                                                minlen_level* out);

/* Closed-form shifts through the reduced Laguerre integrals. */
MINLEN_API minlen_status minlen_shift_integral(const minlen_system* system, double beta, int n, int l,
                                               double* out_ev);

/* ---- perturbation primitives -------------------------------------------- */

MINLEN_API double minlen_shift_matrix_element(double e0_a, double e0_b, double v_ab, double v2_ab, double beta,
                                              double mass, int same_n);
MINLEN_API double minlen_diagonal_shift(double e0, double v, double v2, double beta, double mass);
MINLEN_API minlen_status minlen_power_law_shift(double e0, double v2, double p, double beta, double mass,
                                               double* out);

/* ---- spectra ------------------------------------------------------------ */

typedef struct minlen_spectrum_row {
    minlen_level level;
    minlen_method method;          /* ANALYTIC or NUMERICAL */
    int has_discrepancy;           /* numerical rows when the analytic route also ran */
    double e0_rel_discrepancy;
    double delta_e_rel_discrepancy;
} minlen_spectrum_row;

/* Hydrogen: principal n <= n_max. Oscillator: shells 2n + l <= n_max.
 * Tabulated: radial n <= n_max. Always l <= l_max. n_max <= 50, l_max <= 20. */
MINLEN_API minlen_status minlen_spectrum_compute(const minlen_system* system, double beta, int n_max, int l_max,
                                                 minlen_method method, minlen_spectrum** out);
MINLEN_API size_t minlen_spectrum_size(const minlen_spectrum* spectrum);
MINLEN_API minlen_status minlen_spectrum_row_at(const minlen_spectrum* spectrum, size_t index,
                                                minlen_spectrum_row* out);
MINLEN_API void minlen_spectrum_free(minlen_spectrum* spectrum);

/* ---- degenerate blocks -------------------------------------------------- */

typedef struct minlen_block_info {
    double e0_ev;
    int g;   /* states in the block, m-multiplicity included */
    int f;   /* distinct shift values */
} minlen_block_info;

typedef struct minlen_block_member {
    int n;
    int l;
    int m;
} minlen_block_member;

/* method must be ANALYTIC or NUMERICAL. */
MINLEN_API minlen_status minlen_blocks_compute(const minlen_system* system, double beta, int n_max, int l_max,
                                               minlen_method method, minlen_blocks** out);
MINLEN_API size_t minlen_blocks_count(const minlen_blocks* blocks);
MINLEN_API minlen_status minlen_blocks_info(const minlen_blocks* blocks, size_t index, minlen_block_info* out);
/* j-th distinct shift of block `index` with its multiplicity. */
MINLEN_API minlen_status minlen_blocks_distinct(const minlen_blocks* blocks, size_t index, size_t j,
                                                double* out_shift_ev, int* out_count);
MINLEN_API minlen_status minlen_blocks_member(const minlen_blocks* blocks, size_t index, size_t member,
                                              minlen_block_member* out);
/* Row-major g x g perturbation matrix; `out` must hold g*g doubles. */
MINLEN_API minlen_status minlen_blocks_matrix(const minlen_blocks* blocks, size_t index, double* out);
MINLEN_API size_t minlen_blocks_warning_count(const minlen_blocks* blocks);
MINLEN_API const char* minlen_blocks_warning(const minlen_blocks* blocks, size_t index);
MINLEN_API void minlen_blocks_free(minlen_blocks* blocks);

/* ---- radial solver ------------------------------------------------------ */

typedef struct minlen_grid {
    double r_min;   /* eV^-1 */
    double r_max;   /* eV^-1 */
    int points;
    minlen_spacing spacing;
} minlen_grid;

typedef struct minlen_state_info {
    int n_radial;
    int l;
    double e0_ev;
    double expectation_v_ev;
    double expectation_v2_ev2;
    double norm_residual;
    int nodes;
    int iterations;
    double tail_ratio;
    double points_per_wavelength;
    size_t samples;
} minlen_state_info;

/* n_radial counts interior nodes. grid may be NULL for the default grid. */
MINLEN_API minlen_status minlen_solve(const minlen_system* system, int n_radial, int l, const minlen_grid* grid,
                                      minlen_state** out);
MINLEN_API minlen_status minlen_state_get_info(const minlen_state* state, minlen_state_info* out);
/* Sample i of the reduced wavefunction u(r) (r in eV^-1). */
MINLEN_API minlen_status minlen_state_sample(const minlen_state* state, size_t index, double* out_r, double* out_u);
MINLEN_API void minlen_state_free(minlen_state* state);

/* ---- bounds ------------------------------------------------------------- */

/* Levels use principal n. Result in fm. */
MINLEN_API minlen_status minlen_transition_bound(const minlen_system* hydrogen, int n_a, int l_a, int n_b, int l_b,
                                                 double precision_ev, double* out_fm);
MINLEN_API minlen_status minlen_excitation_bound(double threshold_ev, double* out_fm);

/* ---- validation --------------------------------------------------------- */

typedef struct minlen_validation_options {
    int quadrature_points;  /* 0 selects the default (64) */
    double inject_beta2;    /* debug hook, 0 disables */
} minlen_validation_options;

typedef struct minlen_check {
    const char* name;
    const char* description;
    double tolerance;
    double observed;
    int at_least;   /* 1: pass iff observed >= tolerance; 0: observed <= tolerance */
    int passed;
    const char* note;
} minlen_check;

MINLEN_API minlen_status minlen_validate_run(const minlen_validation_options* options, minlen_report** out);
MINLEN_API size_t minlen_report_size(const minlen_report* report);
/* Strings stay valid until minlen_report_free. */
MINLEN_API minlen_status minlen_report_check(const minlen_report* report, size_t index, minlen_check* out);
MINLEN_API int minlen_report_all_passed(const minlen_report* report);
MINLEN_API void minlen_report_free(minlen_report* report);

#ifdef __cplusplus
}
#endif

#endif /* MINLEN_H */
