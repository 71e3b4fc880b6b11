#include "system.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace minlen {

PhysicalSystem PhysicalSystem::hydrogen(double mass_ev, double alpha)
{
    PhysicalSystem s;
    s.kind_ = SystemKind::Hydrogen;
    s.hydrogen_.emplace(mass_ev, alpha);
    s.mass_ = mass_ev;
    s.potential_ = CentralPotential::coulomb(alpha);
    return s;
}

PhysicalSystem PhysicalSystem::oscillator(double mass_ev, double omega_ev)
{
    PhysicalSystem s;
    s.kind_ = SystemKind::Oscillator;
    s.oscillator_.emplace(mass_ev, omega_ev);
    s.mass_ = mass_ev;
    s.potential_ = CentralPotential::harmonic(mass_ev, omega_ev);
    return s;
}

PhysicalSystem PhysicalSystem::tabulated(CentralPotential potential, double mass_ev,
                                         std::optional<double> length_scale)
{
    if (!(mass_ev > 0.0)) {
        throw DomainError("mass must be positive");
    }
    if (length_scale && !(*length_scale > 0.0)) {
        throw DomainError("length scale must be positive");
    }
    PhysicalSystem s;
    s.kind_ = SystemKind::Tabulated;
    s.mass_ = mass_ev;
    s.potential_ = std::move(potential);
    s.length_scale_ = length_scale;
    return s;
}

Convention PhysicalSystem::convention() const
{
    return kind_ == SystemKind::Hydrogen ? Convention::PrincipalN : Convention::RadialN;
}

const HydrogenSystem& PhysicalSystem::hydrogen_params() const
{
    if (!hydrogen_) {
        throw UsageError("system is not hydrogen");
    }
    return *hydrogen_;
}

const OscillatorSystem& PhysicalSystem::oscillator_params() const
{
    if (!oscillator_) {
        throw UsageError("system is not an oscillator");
    }
    return *oscillator_;
}

std::vector<std::pair<int, int>> PhysicalSystem::enumerate_levels(int n_max, int l_max) const
{
    if (n_max < 0 || n_max > max_n) {
        throw UsageError("n_max must lie in [0, 50]");
    }
    if (l_max < 0 || l_max > max_l) {
        throw UsageError("l_max must lie in [0, 20]");
    }
    std::vector<std::pair<int, int>> levels;
    switch (kind_) {
    case SystemKind::Hydrogen:
        for (int n = 1; n <= n_max; ++n) {
            for (int l = 0; l <= std::min(n - 1, l_max); ++l) {
                levels.emplace_back(n, l);
            }
        }
        break;
    case SystemKind::Oscillator:
        for (int shell = 0; shell <= n_max; ++shell) {
            for (int l = shell % 2; l <= std::min(shell, l_max); l += 2) {
                levels.emplace_back((shell - l) / 2, l);
            }
        }
        break;
    case SystemKind::Tabulated:
        for (int n = 0; n <= n_max; ++n) {
            for (int l = 0; l <= l_max; ++l) {
                levels.emplace_back(n, l);
            }
        }
        break;
    }
    return levels;
}

int PhysicalSystem::radial_nodes(int n, int l) const { return quantum_numbers(n, l).radial_nodes(); }

QuantumNumbers PhysicalSystem::quantum_numbers(int n, int l) const
{
    QuantumNumbers qn{n, l, 0, convention()};
    qn.validate();
    return qn;
}

RadialGrid PhysicalSystem::grid_for(int n, int l) const
{
    return default_grid(potential_, mass_, radial_nodes(n, l), l, length_scale_);
}

CorrectedLevel analytic_level(const PhysicalSystem& sys, const DeformationParams& d, int n, int l)
{
    switch (sys.kind()) {
    case SystemKind::Hydrogen:
        return hydrogen_spectrum(sys.hydrogen_params(), d, QuantumNumbers::principal(n, l));
    case SystemKind::Oscillator:
        return oscillator_spectrum(sys.oscillator_params(), d, QuantumNumbers::radial(n, l));
    case SystemKind::Tabulated:
        break;
    }
    throw UsageError("tabulated potentials have no closed-form spectrum; use the numerical method");
}

NumericalLevel numerical_level(const PhysicalSystem& sys, const DeformationParams& d, int n, int l)
{
    const int nodes = sys.radial_nodes(n, l);
    NumericalLevel out;
    out.state = solve_bound_state(sys.potential(), sys.mass(), nodes, l, sys.grid_for(n, l));
    out.v = expectation(out.state, potential_observable(sys.potential()));
    out.v2 = expectation(out.state, potential_squared_observable(sys.potential()));
    out.level.n = n;
    out.level.l = l;
    out.level.e0 = out.state.e0;
    out.level.shift = perturbation::diagonal_shift(out.state.e0, out.v, out.v2, d.beta(), sys.mass());
    out.level.total = out.level.e0 + out.level.shift;
    out.level.multiplicity = 2 * l + 1;
    return out;
}

namespace {

double relative_difference(double value, double reference)
{
    if (reference == 0.0) {
        return value == 0.0 ? 0.0 : std::abs(value);
    }
    return std::abs(value - reference) / std::abs(reference);
}

} // namespace

std::vector<SpectrumRow> compute_spectrum(const PhysicalSystem& sys, const DeformationParams& d, int n_max, int l_max,
                                          MethodSelection methods)
{
    if (!methods.analytic && !methods.numerical) {
        throw UsageError("no method selected");
    }
    if (methods.analytic && !sys.has_closed_form()) {
        throw UsageError("tabulated potentials have no closed-form spectrum; use the numerical method");
    }
    std::vector<SpectrumRow> rows;
    for (const auto& [n, l] : sys.enumerate_levels(n_max, l_max)) {
        std::optional<CorrectedLevel> analytic;
        if (methods.analytic) {
            analytic = analytic_level(sys, d, n, l);
            rows.push_back({*analytic, Method::Analytic, std::nullopt, std::nullopt});
        }
        if (methods.numerical) {
            SpectrumRow row{numerical_level(sys, d, n, l).level, Method::Numerical, std::nullopt, std::nullopt};
            if (analytic) {
                row.e0_rel_discrepancy = relative_difference(row.level.e0, analytic->e0);
                row.shift_rel_discrepancy = relative_difference(row.level.shift, analytic->shift);
            }
            rows.push_back(row);
        }
    }
    // Sort on the closed-form E0 when present so exactly degenerate rows stay
    // grouped regardless of solver noise.
    std::stable_sort(rows.begin(), rows.end(), [&](const SpectrumRow& a, const SpectrumRow& b) {
        auto key = [&](const SpectrumRow& r) {
            const double e0 = sys.has_closed_form() ? analytic_level(sys, d, r.level.n, r.level.l).e0 : r.level.e0;
            return std::make_tuple(e0, r.level.l, r.level.n, static_cast<int>(r.method));
        };
        return key(a) < key(b);
    });
    return rows;
}

perturbation::BlockAnalysis compute_blocks(const PhysicalSystem& sys, const DeformationParams& d, int n_max, int l_max,
                                           Method method)
{
    const auto levels = sys.enumerate_levels(n_max, l_max);
    std::vector<perturbation::BlockState> states;
    if (method == Method::Analytic) {
        for (const auto& [n, l] : levels) {
            states.push_back({n, l, analytic_level(sys, d, n, l).e0});
        }
        perturbation::MomentSource moments = sys.kind() == SystemKind::Hydrogen
                                                 ? perturbation::hydrogen_moments(sys.hydrogen_params())
                                                 : perturbation::oscillator_moments(sys.oscillator_params());
        return perturbation::build_degenerate_blocks(states, moments, d, sys.mass(),
                                                     perturbation::analytic_degeneracy_tolerance);
    }

    std::map<std::pair<int, int>, RadialState> solved;
    for (const auto& [n, l] : levels) {
        auto state = solve_bound_state(sys.potential(), sys.mass(), sys.radial_nodes(n, l), l, sys.grid_for(n, l));
        states.push_back({n, l, state.e0});
        solved.emplace(std::make_pair(n, l), std::move(state));
    }
    const auto& potential = sys.potential();
    const double mass = sys.mass();
    perturbation::MomentSource moments = [&](const perturbation::BlockState& a, const perturbation::BlockState& b) {
        const RadialState* sa = &solved.at({a.n, a.l});
        const RadialState* sb = &solved.at({b.n, b.l});
        RadialState ra;
        RadialState rb;
        if (sa->grid.r_max != sb->grid.r_max || sa->grid.r_min != sb->grid.r_min ||
            sa->grid.points != sb->grid.points || sa->grid.spacing != sb->grid.spacing) {
            const RadialGrid& common = sa->grid.r_max >= sb->grid.r_max ? sa->grid : sb->grid;
            ra = solve_bound_state(potential, mass, sa->n, sa->l, common);
            rb = solve_bound_state(potential, mass, sb->n, sb->l, common);
            sa = &ra;
            sb = &rb;
        }
        return perturbation::Moments{matrix_element(*sa, *sb, potential_observable(potential)),
                                     matrix_element(*sa, *sb, potential_squared_observable(potential))};
    };
    return perturbation::build_degenerate_blocks(states, moments, d, mass,
                                                 perturbation::numerical_degeneracy_tolerance);
}

} // namespace minlen
