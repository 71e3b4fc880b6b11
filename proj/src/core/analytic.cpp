#include "analytic.hpp"

#include "errors.hpp"
#include "specfun.hpp"

#include <cmath>
#include <string>

namespace minlen {

DeformationParams DeformationParams::from_beta(double beta)
{
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("deformation beta must be finite and non-negative");
    }
    return DeformationParams(beta);
}

DeformationParams DeformationParams::from_delta_x0(double delta_x0_natural)
{
    if (!(delta_x0_natural >= 0.0) || !std::isfinite(delta_x0_natural)) {
        throw DomainError("minimal length must be finite and non-negative");
    }
    return DeformationParams(delta_x0_natural * delta_x0_natural / 5.0);
}

double DeformationParams::delta_x0() const { return std::sqrt(5.0 * beta_); }

void QuantumNumbers::validate() const
{
    if (l < 0) {
        throw UsageError("angular momentum l must be non-negative");
    }
    if (m < -l || m > l) {
        throw UsageError("|m| must not exceed l");
    }
    if (convention == Convention::PrincipalN) {
        if (n < 1) {
            throw UsageError("principal quantum number n must be >= 1");
        }
        if (l > n - 1) {
            throw UsageError("l must not exceed n-1 (l=" + std::to_string(l) + ", n=" + std::to_string(n) + ")");
        }
    } else if (n < 0) {
        throw UsageError("radial quantum number n must be >= 0");
    }
}

OscillatorSystem::OscillatorSystem(double mass_ev, double omega_ev) : mass(mass_ev), omega(omega_ev)
{
    if (!(mass > 0.0) || !(omega > 0.0)) {
        throw DomainError("oscillator needs mass > 0 and omega > 0");
    }
}

double OscillatorSystem::lambda() const { return std::sqrt(mass * omega); }
double OscillatorSystem::strength() const { return 0.5 * mass * omega * omega; }

HydrogenSystem::HydrogenSystem(double mass_ev, double fine_structure) : mass(mass_ev), alpha(fine_structure)
{
    if (!(mass > 0.0)) {
        throw DomainError("hydrogen needs mass > 0");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("coupling alpha must lie in (0, 1)");
    }
}

double HydrogenSystem::gamma(int principal_n) const
{
    if (principal_n < 1) {
        throw UsageError("principal quantum number must be >= 1");
    }
    return mass * alpha / principal_n;
}

namespace {

void require_convention(const QuantumNumbers& qn, Convention expected)
{
    if (qn.convention != expected) {
        throw UsageError(expected == Convention::RadialN
                             ? "oscillator levels use the radial-n convention"
                             : "hydrogen levels use the principal-n convention");
    }
    qn.validate();
}

double power_or_one(double base, int exponent)
{
    return exponent == 0 ? 1.0 : std::pow(base, exponent);
}

} // namespace

double oscillator_radial_wavefunction(const OscillatorSystem& sys, const QuantumNumbers& qn, double r)
{
    require_convention(qn, Convention::RadialN);
    if (!(r >= 0.0)) {
        throw DomainError("radius must be non-negative");
    }
    const double lambda = sys.lambda();
    const double x = lambda * r;
    const double log_norm = 1.5 * std::log(lambda) +
                            0.5 * (std::log(2.0) + specfun::ln_gamma(qn.n + 1.0) - specfun::ln_gamma(qn.n + qn.l + 1.5));
    const double lag = specfun::laguerre({qn.n, qn.l + 0.5}, x * x);
    return std::exp(log_norm - 0.5 * x * x) * power_or_one(x, qn.l) * lag;
}

double hydrogen_radial_wavefunction(const HydrogenSystem& sys, const QuantumNumbers& qn, double r)
{
    require_convention(qn, Convention::PrincipalN);
    if (!(r >= 0.0)) {
        throw DomainError("radius must be non-negative");
    }
    const double g = sys.gamma(qn.n);
    const double x = 2.0 * g * r;
    const int k = qn.n - qn.l - 1;
    const double log_norm = 1.5 * std::log(2.0 * g) +
                            0.5 * (specfun::ln_gamma(k + 1.0) - std::log(2.0 * qn.n) - specfun::ln_gamma(qn.n + qn.l + 1.0));
    const double lag = specfun::laguerre({k, 2.0 * qn.l + 1.0}, x);
    return std::exp(log_norm - 0.5 * x) * power_or_one(x, qn.l) * lag;
}

std::vector<double> oscillator_radial_wavefunction(const OscillatorSystem& sys, const QuantumNumbers& qn,
                                                   std::span<const double> radii)
{
    std::vector<double> out;
    out.reserve(radii.size());
    for (double r : radii) {
        out.push_back(oscillator_radial_wavefunction(sys, qn, r));
    }
    return out;
}

std::vector<double> hydrogen_radial_wavefunction(const HydrogenSystem& sys, const QuantumNumbers& qn,
                                                 std::span<const double> radii)
{
    std::vector<double> out;
    out.reserve(radii.size());
    for (double r : radii) {
        out.push_back(hydrogen_radial_wavefunction(sys, qn, r));
    }
    return out;
}

double oscillator_shift_coefficient(int n, int l)
{
    const double nn = n;
    const double ll = l;
    return (6.0 * nn * nn + 9.0 * nn + 6.0 * nn * ll + ll * ll + 4.0 * ll + 3.75) / 5.0;
}

double hydrogen_shift_coefficient(int n, int l)
{
    const double nn = n;
    const double half = l + 0.5;
    return (4.0 * nn - 3.0 * half) / (5.0 * nn * nn * nn * nn * half);
}

double oscillator_energy(const OscillatorSystem& sys, int n, int l) { return sys.omega * (2.0 * n + l + 1.5); }

double hydrogen_energy(const HydrogenSystem& sys, int n)
{
    return -sys.mass * sys.alpha * sys.alpha / (2.0 * n * n);
}

CorrectedLevel oscillator_spectrum(const OscillatorSystem& sys, const DeformationParams& d, const QuantumNumbers& qn)
{
    require_convention(qn, Convention::RadialN);
    CorrectedLevel level;
    level.n = qn.n;
    level.l = qn.l;
    level.e0 = oscillator_energy(sys, qn.n, qn.l);
    level.shift = d.delta_x0_squared() * sys.mass * sys.omega * sys.omega * oscillator_shift_coefficient(qn.n, qn.l);
    level.total = level.e0 + level.shift;
    level.multiplicity = 2 * qn.l + 1;
    return level;
}

CorrectedLevel hydrogen_spectrum(const HydrogenSystem& sys, const DeformationParams& d, const QuantumNumbers& qn)
{
    require_convention(qn, Convention::PrincipalN);
    const double m = sys.mass;
    const double a2 = sys.alpha * sys.alpha;
    CorrectedLevel level;
    level.n = qn.n;
    level.l = qn.l;
    level.e0 = hydrogen_energy(sys, qn.n);
    level.shift = d.delta_x0_squared() * (m * m * m * a2 * a2) * hydrogen_shift_coefficient(qn.n, qn.l);
    level.total = level.e0 + level.shift;
    level.multiplicity = 2 * qn.l + 1;
    return level;
}

} // namespace minlen
