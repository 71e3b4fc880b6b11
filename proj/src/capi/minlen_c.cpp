#include "minlen.h"

#include "bounds.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "system.hpp"
#include "validation.hpp"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <vector>

struct minlen_system {
    minlen::PhysicalSystem sys;
};

struct minlen_spectrum {
    std::vector<minlen::SpectrumRow> rows;
};

struct minlen_blocks {
    minlen::perturbation::BlockAnalysis analysis;
};

struct minlen_state {
    minlen::RadialState state;
    double v = 0.0;
    double v2 = 0.0;
};

struct minlen_report {
    std::vector<minlen::validation::CheckResult> checks;
};

namespace {

thread_local std::string last_error;

minlen_status fail(minlen_status status, const char* message) {
    last_error = message;
    return status;
}

template <class F>
minlen_status guarded(F&& body) {
    last_error.clear();
    try {
        body();
        return MINLEN_OK;
    } catch (const minlen::NoBoundStateError& e) {
        return fail(MINLEN_ERR_NO_BOUND_STATE, e.what());
    } catch (const minlen::InsensitiveTransitionError& e) {
        return fail(MINLEN_ERR_INSENSITIVE, e.what());
    } catch (const minlen::NumericalError& e) {
        return fail(MINLEN_ERR_NUMERICAL, e.what());
    } catch (const minlen::DomainError& e) {
        return fail(MINLEN_ERR_DOMAIN, e.what());
    } catch (const minlen::UsageError& e) {
        return fail(MINLEN_ERR_USAGE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(MINLEN_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(MINLEN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(MINLEN_ERR_INTERNAL, "unknown error");
    }
}

#define MINLEN_REQUIRE(ptr)                                                                                            \
    do {                                                                                                               \
        if (!(ptr)) return fail(MINLEN_ERR_NULL_ARGUMENT, "null argument: " #ptr);                                     \
    } while (0)

minlen::DeformationParams deformation(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw minlen::DomainError("beta must be finite and non-negative");
    return minlen::DeformationParams::from_beta(beta);
}

minlen_level to_c(const minlen::CorrectedLevel& l) {
    return {l.n, l.l, l.multiplicity, l.e0, l.shift, l.total};
}

std::optional<double> length_scale_from_fm(double fm) {
    if (fm > 0.0) return minlen::units::length_to_natural(fm);
    return std::nullopt;
}

} // namespace

extern "C" {

const char* minlen_version(void) { return "0.1.0"; }

const char* minlen_last_error(void) { return last_error.c_str(); }

const char* minlen_status_name(minlen_status status) {
    switch (status) {
    case MINLEN_OK: return "ok";
    case MINLEN_ERR_NULL_ARGUMENT: return "null argument";
    case MINLEN_ERR_DOMAIN: return "domain error";
    case MINLEN_ERR_USAGE: return "usage error";
    case MINLEN_ERR_NUMERICAL: return "numerical error";
    case MINLEN_ERR_NO_BOUND_STATE: return "no bound state";
    case MINLEN_ERR_INSENSITIVE: return "insensitive transition";
    case MINLEN_ERR_OUT_OF_RANGE: return "index out of range";
    case MINLEN_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void minlen_get_constants(minlen_constants* out) {
    if (!out) return;
    namespace c = minlen::constants;
    *out = {c::electron_mass_ev, c::fine_structure, c::hbar_c_mev_fm, c::planck_h_ev_s};
}

minlen_status minlen_length_to_natural(double fm, double* out_inverse_ev) {
    MINLEN_REQUIRE(out_inverse_ev);
    return guarded([&] { *out_inverse_ev = minlen::units::length_to_natural(fm); });
}

minlen_status minlen_natural_to_length(double inverse_ev, double* out_fm) {
    MINLEN_REQUIRE(out_fm);
    return guarded([&] { *out_fm = minlen::units::natural_to_length(inverse_ev); });
}

minlen_status minlen_frequency_to_energy(double khz, double* out_ev) {
    MINLEN_REQUIRE(out_ev);
    return guarded([&] { *out_ev = minlen::units::frequency_to_energy(khz); });
}

minlen_status minlen_beta_from_delta_x0_fm(double delta_x0_fm, double* out_beta) {
    MINLEN_REQUIRE(out_beta);
    return guarded([&] { *out_beta = minlen::bounds::beta_for_length_fm(delta_x0_fm); });
}

minlen_status minlen_delta_x0_fm_from_beta(double beta, double* out_fm) {
    MINLEN_REQUIRE(out_fm);
    return guarded([&] { *out_fm = minlen::units::natural_to_length(deformation(beta).delta_x0()); });
}

minlen_status minlen_system_hydrogen(double mass_ev, double alpha, minlen_system** out) {
    MINLEN_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new minlen_system{minlen::PhysicalSystem::hydrogen(mass_ev, alpha)}; });
}

minlen_status minlen_system_oscillator(double mass_ev, double omega_ev, minlen_system** out) {
    MINLEN_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new minlen_system{minlen::PhysicalSystem::oscillator(mass_ev, omega_ev)}; });
}

minlen_status minlen_system_tabulated_file(const char* path, double mass_ev, double length_scale_fm,
                                           minlen_system** out) {
    MINLEN_REQUIRE(path);
    MINLEN_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        auto pot = minlen::load_tabulated_potential(path);
        *out = new minlen_system{
            minlen::PhysicalSystem::tabulated(std::move(pot), mass_ev, length_scale_from_fm(length_scale_fm))};
    });
}

minlen_status minlen_system_tabulated(const double* radii_fm, const double* values_ev, size_t count, double mass_ev,
                                      double length_scale_fm, minlen_system** out) {
    MINLEN_REQUIRE(radii_fm);
    MINLEN_REQUIRE(values_ev);
    MINLEN_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        std::vector<double> r(count), v(values_ev, values_ev + count);
        for (size_t i = 0; i < count; ++i) r[i] = minlen::units::length_to_natural(radii_fm[i]);
        auto pot = minlen::CentralPotential::tabulated(std::move(r), std::move(v));
        *out = new minlen_system{
            minlen::PhysicalSystem::tabulated(std::move(pot), mass_ev, length_scale_from_fm(length_scale_fm))};
    });
}

void minlen_system_free(minlen_system* system) { delete system; }

minlen_status minlen_system_get_kind(const minlen_system* system, minlen_system_kind* out) {
    MINLEN_REQUIRE(system);
    MINLEN_REQUIRE(out);
    switch (system->sys.kind()) {
    case minlen::SystemKind::Hydrogen: *out = MINLEN_SYSTEM_HYDROGEN; break;
    case minlen::SystemKind::Oscillator: *out = MINLEN_SYSTEM_OSCILLATOR; break;
    case minlen::SystemKind::Tabulated: *out = MINLEN_SYSTEM_TABULATED; break;
    }
    last_error.clear();
    return MINLEN_OK;
}

minlen_status minlen_level_analytic(const minlen_system* system, double beta, int n, int l, minlen_level* out) {
    MINLEN_REQUIRE(system);
    MINLEN_REQUIRE(out);
    return guarded([&] { *out = to_c(minlen::analytic_level(system->sys, deformation(beta), n, l)); });
}

minlen_status minlen_level_numerical(const minlen_system* system, double beta, int n, int l, minlen_level* out) {
    MINLEN_REQUIRE(system);
    MINLEN_REQUIRE(out);
    return guarded([&] { *out = to_c(minlen::numerical_level(system->sys, deformation(beta), n, l).level); });
}

minlen_status minlen_shift_integral(const minlen_system* system, double beta, int n, int l, double* out_ev) {
    MINLEN_REQUIRE(system);
    MINLEN_REQUIRE(out_ev);
    return guarded([&] {
        const auto& s = system->sys;
        auto d = deformation(beta);
        auto qn = s.quantum_numbers(n, l);
        switch (s.kind()) {
        case minlen::SystemKind::Hydrogen:
            *out_ev = minlen::perturbation::hydrogen_shift_integral(s.hydrogen_params(), qn, d);
            break;
        case minlen::SystemKind::Oscillator:
            *out_ev = minlen::perturbation::oscillator_shift_integral(s.oscillator_params(), qn, d);
            break;
        case minlen::SystemKind::Tabulated:
            throw minlen::UsageError("tabulated potentials have no closed-form shift integral");
        }
    });
}

double minlen_shift_matrix_element(double e0_a, double e0_b, double v_ab, double v2_ab, double beta, double mass,
                                   int same_n) {
    return minlen::perturbation::shift_matrix_element(e0_a, e0_b, v_ab, v2_ab, beta, mass, same_n != 0);
}

double minlen_diagonal_shift(double e0, double v, double v2, double beta, double mass) {
    return minlen::perturbation::diagonal_shift(e0, v, v2, beta, mass);
}

minlen_status minlen_power_law_shift(double e0, double v2, double p, double beta, double mass, double* out) {
    MINLEN_REQUIRE(out);
    return guarded([&] { *out = minlen::perturbation::power_law_shift(e0, v2, p, beta, mass); });
}

minlen_status minlen_spectrum_compute(const minlen_system* system, double beta, int n_max, int l_max,
                                      minlen_method method, minlen_spectrum** out) {
    MINLEN_REQUIRE(system);
    MINLEN_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        minlen::MethodSelection sel;
        sel.analytic = (method & MINLEN_METHOD_ANALYTIC) != 0;
        sel.numerical = (method & MINLEN_METHOD_NUMERICAL) != 0;
        if (!sel.analytic && !sel.numerical) throw minlen::UsageError("no method selected");
        auto rows = minlen::compute_spectrum(system->sys, deformation(beta), n_max, l_max, sel);
        *out = new minlen_spectrum{std::move(rows)};
    });
}

size_t minlen_spectrum_size(const minlen_spectrum* spectrum) { return spectrum ? spectrum->rows.size() : 0; }

minlen_status minlen_spectrum_row_at(const minlen_spectrum* spectrum, size_t index, minlen_spectrum_row* out) {
    MINLEN_REQUIRE(spectrum);
    MINLEN_REQUIRE(out);
    if (index >= spectrum->rows.size()) return fail(MINLEN_ERR_OUT_OF_RANGE, "spectrum row index out of range");
    const auto& r = spectrum->rows[index];
    out->level = to_c(r.level);
    out->method = r.method == minlen::Method::Analytic ? MINLEN_METHOD_ANALYTIC : MINLEN_METHOD_NUMERICAL;
    out->has_discrepancy = r.e0_rel_discrepancy.has_value() ? 1 : 0;
    out->e0_rel_discrepancy = r.e0_rel_discrepancy.value_or(0.0);
    out->delta_e_rel_discrepancy = r.shift_rel_discrepancy.value_or(0.0);
    last_error.clear();
    return MINLEN_OK;
}

void minlen_spectrum_free(minlen_spectrum* spectrum) { delete spectrum; }

minlen_status minlen_blocks_compute(const minlen_system* system, double beta, int n_max, int l_max,
                                    minlen_method method, minlen_blocks** out) {
    MINLEN_REQUIRE(system);
    MINLEN_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        minlen::Method m;
        if (method == MINLEN_METHOD_ANALYTIC) {
            m = minlen::Method::Analytic;
        } else if (method == MINLEN_METHOD_NUMERICAL) {
            m = minlen::Method::Numerical;
        } else {
            throw minlen::UsageError("block analysis takes exactly one method");
        }
        *out = new minlen_blocks{minlen::compute_blocks(system->sys, deformation(beta), n_max, l_max, m)};
    });
}

size_t minlen_blocks_count(const minlen_blocks* blocks) { return blocks ? blocks->analysis.blocks.size() : 0; }

minlen_status minlen_blocks_info(const minlen_blocks* blocks, size_t index, minlen_block_info* out) {
    MINLEN_REQUIRE(blocks);
    MINLEN_REQUIRE(out);
    if (index >= blocks->analysis.blocks.size()) return fail(MINLEN_ERR_OUT_OF_RANGE, "block index out of range");
    const auto& b = blocks->analysis.blocks[index];
    *out = {b.e0, b.g(), b.f()};
    last_error.clear();
    return MINLEN_OK;
}

minlen_status minlen_blocks_distinct(const minlen_blocks* blocks, size_t index, size_t j, double* out_shift_ev,
                                     int* out_count) {
    MINLEN_REQUIRE(blocks);
    MINLEN_REQUIRE(out_shift_ev);
    if (index >= blocks->analysis.blocks.size()) return fail(MINLEN_ERR_OUT_OF_RANGE, "block index out of range");
    const auto& b = blocks->analysis.blocks[index];
    if (j >= b.distinct.size()) return fail(MINLEN_ERR_OUT_OF_RANGE, "distinct shift index out of range");
    *out_shift_ev = b.distinct[j].value;
    if (out_count) *out_count = b.distinct[j].count;
    last_error.clear();
    return MINLEN_OK;
}

minlen_status minlen_blocks_member(const minlen_blocks* blocks, size_t index, size_t member,
                                   minlen_block_member* out) {
    MINLEN_REQUIRE(blocks);
    MINLEN_REQUIRE(out);
    if (index >= blocks->analysis.blocks.size()) return fail(MINLEN_ERR_OUT_OF_RANGE, "block index out of range");
    const auto& b = blocks->analysis.blocks[index];
    if (member >= b.members.size()) return fail(MINLEN_ERR_OUT_OF_RANGE, "block member index out of range");
    *out = {b.members[member].n, b.members[member].l, b.members[member].m};
    last_error.clear();
    return MINLEN_OK;
}

minlen_status minlen_blocks_matrix(const minlen_blocks* blocks, size_t index, double* out) {
    MINLEN_REQUIRE(blocks);
    MINLEN_REQUIRE(out);
    if (index >= blocks->analysis.blocks.size()) return fail(MINLEN_ERR_OUT_OF_RANGE, "block index out of range");
    const auto& mat = blocks->analysis.blocks[index].matrix;
    for (Eigen::Index i = 0; i < mat.rows(); ++i)
        for (Eigen::Index j = 0; j < mat.cols(); ++j) out[i * mat.cols() + j] = mat(i, j);
    last_error.clear();
    return MINLEN_OK;
}

size_t minlen_blocks_warning_count(const minlen_blocks* blocks) {
    return blocks ? blocks->analysis.warnings.size() : 0;
}

const char* minlen_blocks_warning(const minlen_blocks* blocks, size_t index) {
    if (!blocks || index >= blocks->analysis.warnings.size()) return nullptr;
    return blocks->analysis.warnings[index].message.c_str();
}

void minlen_blocks_free(minlen_blocks* blocks) { delete blocks; }

minlen_status minlen_solve(const minlen_system* system, int n_radial, int l, const minlen_grid* grid,
                           minlen_state** out) {
    MINLEN_REQUIRE(system);
    MINLEN_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const auto& s = system->sys;
        if (n_radial < 0 || l < 0) throw minlen::UsageError("radial quantum number and l must be non-negative");
        int n_sys = s.convention() == minlen::Convention::PrincipalN ? n_radial + l + 1 : n_radial;
        minlen::RadialGrid g = s.grid_for(n_sys, l);
        if (grid) {
            g.r_min = grid->r_min;
            g.r_max = grid->r_max;
            g.points = grid->points;
            g.spacing = grid->spacing == MINLEN_SPACING_UNIFORM ? minlen::Spacing::Uniform
                                                                 : minlen::Spacing::LogUniform;
        }
        auto st = minlen::solve_bound_state(s.potential(), s.mass(), n_radial, l, g);
        double v = minlen::expectation(st, minlen::potential_observable(s.potential()));
        double v2 = minlen::expectation(st, minlen::potential_squared_observable(s.potential()));
        *out = new minlen_state{std::move(st), v, v2};
    });
}

minlen_status minlen_state_get_info(const minlen_state* state, minlen_state_info* out) {
    MINLEN_REQUIRE(state);
    MINLEN_REQUIRE(out);
    const auto& s = state->state;
    *out = {s.n,         s.l,          s.e0,       state->v,        state->v2,          s.norm_residual,
            s.nodes,     s.iterations, s.tail_ratio, s.points_per_wavelength, s.radii.size()};
    last_error.clear();
    return MINLEN_OK;
}

minlen_status minlen_state_sample(const minlen_state* state, size_t index, double* out_r, double* out_u) {
    MINLEN_REQUIRE(state);
    if (index >= state->state.radii.size()) return fail(MINLEN_ERR_OUT_OF_RANGE, "sample index out of range");
    if (out_r) *out_r = state->state.radii[index];
    if (out_u) *out_u = state->state.u[index];
    last_error.clear();
    return MINLEN_OK;
}

void minlen_state_free(minlen_state* state) { delete state; }

minlen_status minlen_transition_bound(const minlen_system* hydrogen, int n_a, int l_a, int n_b, int l_b,
                                      double precision_ev, double* out_fm) {
    MINLEN_REQUIRE(hydrogen);
    MINLEN_REQUIRE(out_fm);
    return guarded([&] {
        if (hydrogen->sys.kind() != minlen::SystemKind::Hydrogen)
            throw minlen::UsageError("transition bounds need a hydrogen-like system");
        minlen::bounds::TransitionBoundInput in{hydrogen->sys.hydrogen_params(),
                                                minlen::QuantumNumbers::principal(n_a, l_a),
                                                minlen::QuantumNumbers::principal(n_b, l_b), precision_ev};
        *out_fm = minlen::bounds::transition_bound(in);
    });
}

minlen_status minlen_excitation_bound(double threshold_ev, double* out_fm) {
    MINLEN_REQUIRE(out_fm);
    return guarded([&] { *out_fm = minlen::bounds::excitation_bound({threshold_ev}); });
}

minlen_status minlen_validate_run(const minlen_validation_options* options, minlen_report** out) {
    MINLEN_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        minlen::validation::ValidationOptions opts;
        if (options) {
            if (options->quadrature_points > 0) opts.quadrature_points = options->quadrature_points;
            opts.inject_beta2 = options->inject_beta2;
        }
        *out = new minlen_report{minlen::validation::run_validation(opts)};
    });
}

size_t minlen_report_size(const minlen_report* report) { return report ? report->checks.size() : 0; }

minlen_status minlen_report_check(const minlen_report* report, size_t index, minlen_check* out) {
    MINLEN_REQUIRE(report);
    MINLEN_REQUIRE(out);
    if (index >= report->checks.size()) return fail(MINLEN_ERR_OUT_OF_RANGE, "check index out of range");
    const auto& c = report->checks[index];
    *out = {c.name.c_str(),
            c.description.c_str(),
            c.tolerance,
            c.observed,
            c.comparison == minlen::validation::Comparison::AtLeast ? 1 : 0,
            c.passed ? 1 : 0,
            c.note.c_str()};
    last_error.clear();
    return MINLEN_OK;
}

int minlen_report_all_passed(const minlen_report* report) {
    return report && minlen::validation::all_passed(report->checks) ? 1 : 0;
}

void minlen_report_free(minlen_report* report) { delete report; }

} // extern "C"
