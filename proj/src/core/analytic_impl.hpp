#pragma once

#include "specfun.hpp"

#include <cmath>

namespace minlen {

template <typename F>
double oscillator_expectation(const OscillatorSystem& sys, const QuantumNumbers& qn, const QuantumNumbers& qn2, F&& f,
                              int points)
{
    // r = sqrt(x)/lambda, r^2 dr = x^{1/2} dx / (2 lambda^3); weight x^{-1/2} e^{-x}
    // carries the Jacobian, the remaining factor x e^{x} / (2 lambda^3) is folded in.
    const double lambda = sys.lambda();
    const auto rule = specfun::cached_gauss_laguerre(-0.5, points);
    return rule->integrate([&](double x) {
        const double r = std::sqrt(x) / lambda;
        const double psi = oscillator_radial_wavefunction(sys, qn, r) * std::exp(0.5 * x);
        const double psi2 = oscillator_radial_wavefunction(sys, qn2, r) * std::exp(0.5 * x);
        return psi * psi2 * f(r) * x / (2.0 * lambda * lambda * lambda);
    });
}

template <typename F>
double hydrogen_expectation(const HydrogenSystem& sys, const QuantumNumbers& qn, const QuantumNumbers& qn2, F&& f,
                            int points)
{
    // Both states must share one exponential scale for the e^{-x} weight to
    // absorb their product exactly; use gamma = (gamma_a + gamma_b) / 2.
    const double g = 0.5 * (sys.gamma(qn.n) + sys.gamma(qn2.n));
    const auto rule = specfun::cached_gauss_laguerre(0.0, points);
    return rule->integrate([&](double x) {
        const double r = x / (2.0 * g);
        const double psi = hydrogen_radial_wavefunction(sys, qn, r) * std::exp(0.5 * x);
        const double psi2 = hydrogen_radial_wavefunction(sys, qn2, r) * std::exp(0.5 * x);
        return psi * psi2 * f(r) * r * r / (2.0 * g);
    });
}

} // namespace minlen
