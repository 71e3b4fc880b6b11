#include "bounds.hpp"

#include "constants.hpp"
#include "errors.hpp"

#include <cmath>
#include <cstdint>

namespace minlen::bounds {

namespace {

// Shift coefficients compared as exact fractions (8n - 6l - 3) / (n^4 (2l + 1)).
bool same_coefficient(const QuantumNumbers& a, const QuantumNumbers& b)
{
    if (a.n > 1000 || b.n > 1000) {
        return false;
    }
    auto num = [](const QuantumNumbers& q) { return std::int64_t{8} * q.n - 6 * q.l - 3; };
    auto den = [](const QuantumNumbers& q) {
        const std::int64_t n = q.n;
        return n * n * n * n * (2 * q.l + 1);
    };
    return num(a) * den(b) == num(b) * den(a);
}

} // namespace

double transition_coefficient(const HydrogenSystem& sys, const QuantumNumbers& qn)
{
    if (qn.convention != Convention::PrincipalN) {
        throw UsageError("transition levels use the principal-n convention");
    }
    qn.validate();
    const double m = sys.mass;
    const double a2 = sys.alpha * sys.alpha;
    return m * m * m * a2 * a2 * hydrogen_shift_coefficient(qn.n, qn.l);
}

double transition_bound(const TransitionBoundInput& input)
{
    if (!(input.precision_ev > 0.0)) {
        throw DomainError("experimental precision must be positive");
    }
    if (input.level_a.n == input.level_b.n && input.level_a.l == input.level_b.l) {
        throw UsageError("transition needs two distinct levels");
    }
    const double ca = transition_coefficient(input.system, input.level_a);
    const double cb = transition_coefficient(input.system, input.level_b);
    const double diff = std::abs(ca - cb);
    if (same_coefficient(input.level_a, input.level_b) || diff == 0.0) {
        throw InsensitiveTransitionError("transition insensitive to deformation: both levels share one shift coefficient");
    }
    const double natural = std::sqrt(input.precision_ev / diff);
    return natural * constants::hbar_c_ev_fm;
}

double excitation_bound(const ExcitationBoundInput& input)
{
    if (!(input.threshold_ev > 0.0)) {
        throw DomainError("excitation threshold must be positive");
    }
    return 2.0 * constants::pi * constants::hbar_c_ev_fm / input.threshold_ev;
}

double beta_for_length_fm(double delta_x0_fm)
{
    const double natural = units::length_to_natural(delta_x0_fm);
    return natural * natural / 5.0;
}

} // namespace minlen::bounds
