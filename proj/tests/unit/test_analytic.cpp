#include "analytic.hpp"
#include "constants.hpp"
#include "errors.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace minlen;

namespace {

int interior_zeros(const std::vector<double>& v)
{
    int count = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if ((v[i - 1] < 0.0) != (v[i] < 0.0) && v[i - 1] != 0.0) ++count;
    return count;
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * (i + 1) / n;
    return out;
}

constexpr int points = 64;

} // namespace

TEST_SUITE("analytic") {

TEST_CASE("deformation params") {
    const auto d = DeformationParams::from_beta(2.0);
    CHECK(d.beta_prime() == 4.0);
    CHECK(d.delta_x0_squared() == 10.0);
    CHECK(d.delta_x0() == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
    const auto e = DeformationParams::from_delta_x0(3.0);
    CHECK(e.beta() == doctest::Approx(9.0 / 5.0).epsilon(1e-15));
    CHECK_THROWS_AS(DeformationParams::from_beta(-1.0), DomainError);
    CHECK_THROWS_AS(DeformationParams::from_delta_x0(-1.0), DomainError);
}

TEST_CASE("quantum number validation") {
    CHECK_NOTHROW(QuantumNumbers::principal(2, 1, -1).validate());
    CHECK_THROWS_AS(QuantumNumbers::principal(2, 2).validate(), UsageError);
    CHECK_THROWS_AS(QuantumNumbers::principal(0, 0).validate(), UsageError);
    CHECK_THROWS_AS(QuantumNumbers::radial(1, 1, 2).validate(), UsageError);
    CHECK_THROWS_AS(QuantumNumbers::radial(-1, 0).validate(), UsageError);
    CHECK(QuantumNumbers::principal(4, 1).radial_nodes() == 2);
    CHECK(QuantumNumbers::radial(3, 2).radial_nodes() == 3);
}

TEST_CASE("system parameter validation") {
    CHECK_THROWS_AS(OscillatorSystem(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(OscillatorSystem(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(HydrogenSystem(1.0, 1.5), DomainError);
    CHECK_THROWS_AS(HydrogenSystem(-1.0, 0.1), DomainError);
    const OscillatorSystem osc(4.0, 9.0);
    CHECK(osc.lambda() * osc.lambda() == doctest::Approx(36.0).epsilon(1e-15));
    CHECK(2.0 * osc.strength() == doctest::Approx(4.0 * 81.0).epsilon(1e-15));
    const HydrogenSystem hyd(2.0, 0.1);
    CHECK(hyd.gamma(4) == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("oscillator wavefunction") {
    const OscillatorSystem osc(1.0, 1.0);
    const double lam = osc.lambda();
    const double r = 0.7;
    const double expected = std::pow(lam, 1.5) * std::sqrt(2.0 / std::tgamma(1.5)) * std::exp(-0.5 * lam * lam * r * r);
    CHECK(oscillator_radial_wavefunction(osc, QuantumNumbers::radial(0, 0), r) == doctest::Approx(expected).epsilon(1e-14));

    auto unit = [](double) { return 1.0; };
    CHECK(std::abs(oscillator_expectation(osc, QuantumNumbers::radial(0, 0), QuantumNumbers::radial(0, 0), unit, points) - 1.0) <= 1e-12);
    CHECK(std::abs(oscillator_expectation(osc, QuantumNumbers::radial(0, 0), QuantumNumbers::radial(1, 0), unit, points)) <= 1e-12);

    const auto samples = oscillator_radial_wavefunction(osc, QuantumNumbers::radial(2, 1), linspace(0.0, 8.0, 4000));
    CHECK(interior_zeros(samples) == 2);
    CHECK_THROWS_AS(oscillator_radial_wavefunction(osc, QuantumNumbers::principal(1, 0), 1.0), UsageError);
    CHECK_THROWS_AS(oscillator_radial_wavefunction(osc, QuantumNumbers::radial(0, 0), -1.0), DomainError);
}

TEST_CASE("hydrogen wavefunction") {
    const HydrogenSystem hyd(constants::electron_mass_ev, constants::fine_structure);
    const double g1 = hyd.gamma(1);
    const double r = 0.3 / g1;
    CHECK(hydrogen_radial_wavefunction(hyd, QuantumNumbers::principal(1, 0), r) ==
          doctest::Approx(2.0 * std::pow(g1, 1.5) * std::exp(-g1 * r)).epsilon(1e-14));

    const auto samples = hydrogen_radial_wavefunction(hyd, QuantumNumbers::principal(3, 1), linspace(0.0, 60.0 / g1, 4000));
    CHECK(interior_zeros(samples) == 1);

    // <1/r> = m alpha / n^2
    const double inv_r = hydrogen_expectation(hyd, QuantumNumbers::principal(2, 0), QuantumNumbers::principal(2, 0),
                                              [](double rr) { return 1.0 / rr; }, points);
    const double oracle = hyd.mass * hyd.alpha / 4.0;
    CHECK(std::abs(inv_r - oracle) / oracle <= 1e-11);
    CHECK_THROWS_AS(hydrogen_radial_wavefunction(hyd, QuantumNumbers::principal(2, 2), 1.0), UsageError);
    CHECK_THROWS_AS(hydrogen_radial_wavefunction(hyd, QuantumNumbers::radial(0, 0), 1.0), UsageError);
}

TEST_CASE("orthonormality n, n' <= 8, l <= 6") {
    constexpr double tolerance = 1e-11;
    const OscillatorSystem osc(1.0, 1.0);
    const HydrogenSystem hyd(1.0, constants::fine_structure);
    auto unit = [](double) { return 1.0; };
    double worst_osc = 0.0;
    double worst_hyd = 0.0;
    for (int l = 0; l <= 6; ++l) {
        for (int a = 0; a <= 8; ++a) {
            for (int b = 0; b <= 8; ++b) {
                const double o = oscillator_expectation(osc, QuantumNumbers::radial(a, l), QuantumNumbers::radial(b, l), unit, points);
                worst_osc = std::max(worst_osc, std::abs(o - (a == b ? 1.0 : 0.0)));
                const int na = a + l + 1;
                const int nb = b + l + 1;
                // Distinct hydrogen shells carry different exponential scales, so the
                // cross overlap needs a denser rule than the diagonal.
                const double h = hydrogen_expectation(hyd, QuantumNumbers::principal(na, l), QuantumNumbers::principal(nb, l), unit, 128);
                worst_hyd = std::max(worst_hyd, std::abs(h - (a == b ? 1.0 : 0.0)));
            }
        }
    }
    INFO("oscillator ", worst_osc, " hydrogen ", worst_hyd);
    CHECK(worst_osc <= tolerance);
    CHECK(worst_hyd <= tolerance);
}

TEST_CASE("virial theorem") {
    constexpr double tolerance = 1e-10;
    const OscillatorSystem osc(1.0, 1.0);
    const HydrogenSystem hyd(1.0, constants::fine_structure);
    for (int n = 0; n <= 8; ++n) {
        for (int l = 0; l <= 4; ++l) {
            const auto qn = QuantumNumbers::radial(n, l);
            const double v = oscillator_expectation(osc, qn, qn, [&](double r) { return osc.strength() * r * r; }, points);
            const double e0 = oscillator_energy(osc, n, l);
            CHECK(std::abs(v - e0 / 2.0) / (e0 / 2.0) <= tolerance);
        }
    }
    for (int n = 1; n <= 8; ++n) {
        for (int l = 0; l < n; ++l) {
            const auto qn = QuantumNumbers::principal(n, l);
            const double v = hydrogen_expectation(hyd, qn, qn, [&](double r) { return -hyd.alpha / r; }, points);
            const double e0 = hydrogen_energy(hyd, n);
            CHECK(std::abs(v - 2.0 * e0) / std::abs(2.0 * e0) <= tolerance);
        }
    }
}

TEST_CASE("oscillator spectrum") {
    const OscillatorSystem osc(2.0, 0.5);
    const auto zero = oscillator_spectrum(osc, DeformationParams::from_beta(0.0), QuantumNumbers::radial(0, 0));
    CHECK(zero.e0 == 0.75);
    CHECK(zero.shift == 0.0);
    CHECK(zero.total == zero.e0);

    const auto d = DeformationParams::from_beta(0.01);
    const double scale = d.delta_x0_squared() * osc.mass * osc.omega * osc.omega;
    const auto ground = oscillator_spectrum(osc, d, QuantumNumbers::radial(0, 0));
    CHECK(ground.shift == doctest::Approx(0.75 * scale).epsilon(1e-15));
    const auto a = oscillator_spectrum(osc, d, QuantumNumbers::radial(1, 0));
    const auto b = oscillator_spectrum(osc, d, QuantumNumbers::radial(0, 2));
    CHECK(a.e0 == b.e0);
    CHECK(a.e0 == 3.5 * osc.omega);
    CHECK(a.shift == doctest::Approx(3.75 * scale).epsilon(1e-15));
    CHECK(b.shift == doctest::Approx(3.15 * scale).epsilon(1e-15));
    CHECK(a.shift > b.shift);
    CHECK(b.multiplicity == 5);
    CHECK(a.total == a.e0 + a.shift);
    CHECK(oscillator_shift_coefficient(0, 1) == doctest::Approx(1.75).epsilon(1e-15));
}

TEST_CASE("hydrogen spectrum") {
    const HydrogenSystem hyd(constants::electron_mass_ev, constants::fine_structure);
    const auto base = hydrogen_spectrum(hyd, DeformationParams::from_beta(0.0), QuantumNumbers::principal(1, 0));
    CHECK(base.e0 == doctest::Approx(-13.6057).epsilon(1e-5));
    CHECK(base.shift == 0.0);

    const auto d = DeformationParams::from_beta(1e-20);
    const double m3a4 = std::pow(hyd.mass, 3) * std::pow(hyd.alpha, 4);
    const auto s1 = hydrogen_spectrum(hyd, d, QuantumNumbers::principal(1, 0));
    CHECK(s1.shift == doctest::Approx(d.delta_x0_squared() * m3a4).epsilon(1e-14));

    for (int n = 1; n <= 20; ++n)
        for (int l = 0; l < n; ++l) CHECK(hydrogen_spectrum(hyd, d, QuantumNumbers::principal(n, l)).shift > 0.0);
    CHECK(hydrogen_spectrum(hyd, d, QuantumNumbers::principal(3, 2)).multiplicity == 5);
    CHECK_THROWS_AS(hydrogen_spectrum(hyd, d, QuantumNumbers::principal(2, 2)), UsageError);
}

TEST_CASE("normalization survives large n") {
    const OscillatorSystem osc(1.0, 1.0);
    const auto qn = QuantumNumbers::radial(50, 3);
    const double v = oscillator_radial_wavefunction(osc, qn, 3.0);
    CHECK(std::isfinite(v));
    const HydrogenSystem hyd(1.0, 0.5);
    CHECK(std::isfinite(hydrogen_radial_wavefunction(hyd, QuantumNumbers::principal(50, 10), 100.0)));
}

}
