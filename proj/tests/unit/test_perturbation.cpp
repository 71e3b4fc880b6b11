#include "constants.hpp"
#include "errors.hpp"
#include "perturbation.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace minlen;
using namespace minlen::perturbation;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_SUITE("perturbation") {

TEST_CASE("matrix element formula") {
    CHECK(shift_matrix_element(1.0, 2.0, 3.0, 4.0, 0.0, 5.0, true) == 0.0);
    CHECK(shift_matrix_element(1.0, 2.0, 3.0, 4.0, 0.5, 2.0, false) == doctest::Approx(4.0 * 0.5 * 2.0 * (-9.0 + 4.0)));
    CHECK(shift_matrix_element(2.0, 2.0, 3.0, 4.0, 0.5, 2.0, true) ==
          doctest::Approx(4.0 * 0.5 * 2.0 * (4.0 - 12.0 + 4.0)));
    CHECK(shift_matrix_element(2.0, 2.0, 3.0, 4.0, 0.5, 2.0, true) == diagonal_shift(2.0, 3.0, 4.0, 0.5, 2.0));
}

TEST_CASE("diagonal shift") {
    CHECK(diagonal_shift(3.0, 0.0, 0.0, 0.25, 2.0) == doctest::Approx(4.0 * 0.25 * 2.0 * 9.0));
    CHECK(diagonal_shift(3.0, 1.0, 5.0, 0.0, 2.0) == 0.0);
}

TEST_CASE("power law shift") {
    CHECK(power_law_shift(5.0, 7.0, 2.0, 0.1, 3.0) == doctest::Approx(4.0 * 0.1 * 3.0 * 7.0).epsilon(1e-15));
    CHECK(power_law_shift(5.0, 7.0, 2.0, 0.0, 3.0) == 0.0);
    CHECK_THROWS_AS(power_law_shift(1.0, 1.0, -2.0, 0.1, 1.0), DomainError);

    // Hydrogen 1S: <1/r^2> = 2 m^2 alpha^2 gives 4 beta m (-3 E0^2 + alpha^2 <1/r^2>) = 5 beta m^3 alpha^4
    const double m = 1.0;
    const double a = 0.1;
    const double beta = 0.3;
    const double e0 = -0.5 * m * a * a;
    const double v2 = a * a * 2.0 * m * m * a * a;
    CHECK(rel(power_law_shift(e0, v2, -1.0, beta, m), 5.0 * beta * m * m * m * a * a * a * a) <= 1e-14);
}

TEST_CASE("shift integrals match the closed forms") {
    const OscillatorSystem osc(1.0, 1.0);
    const auto d = DeformationParams::from_beta(1e-3);
    CHECK(rel(oscillator_shift_integral(osc, QuantumNumbers::radial(0, 0), d), 0.75 * d.delta_x0_squared()) <= 1e-12);
    CHECK(oscillator_shift_integral(osc, QuantumNumbers::radial(2, 1), DeformationParams::from_beta(0.0)) == 0.0);
    for (int shell = 0; shell <= 10; ++shell) {
        for (int l = shell % 2; l <= shell; l += 2) {
            const auto qn = QuantumNumbers::radial((shell - l) / 2, l);
            CHECK(rel(oscillator_shift_integral(osc, qn, d), oscillator_spectrum(osc, d, qn).shift) <= 1e-10);
        }
    }
    const HydrogenSystem hyd(constants::electron_mass_ev, constants::fine_structure);
    const auto dh = DeformationParams::from_beta(1e-22);
    for (int n = 1; n <= 10; ++n) {
        for (int l = 0; l < n; ++l) {
            const auto qn = QuantumNumbers::principal(n, l);
            CHECK(rel(hydrogen_shift_integral(hyd, qn, dh), hydrogen_spectrum(hyd, dh, qn).shift) <= 1e-10);
        }
    }
    CHECK(hydrogen_shift_integral(hyd, QuantumNumbers::principal(3, 1), DeformationParams::from_beta(0.0)) == 0.0);
    CHECK_THROWS_AS(hydrogen_shift_integral(hyd, QuantumNumbers::radial(0, 0), dh), UsageError);
    CHECK_THROWS_AS(oscillator_shift_integral(osc, QuantumNumbers::principal(1, 0), d), UsageError);
}

TEST_CASE("diagonal shift from quadrature moments, hydrogen 2P") {
    const HydrogenSystem hyd(1.0, constants::fine_structure);
    const auto d = DeformationParams::from_beta(1.0);
    const auto moments = hydrogen_moments(hyd);
    const BlockState s{2, 1, hydrogen_energy(hyd, 2)};
    const auto mo = moments(s, s);
    const double shift = diagonal_shift(s.e0, mo.v, mo.v2, d.beta(), hyd.mass);
    const double a4 = std::pow(hyd.alpha, 4);
    CHECK(rel(shift, d.beta() * a4 * (8.0 - 4.5) / (16.0 * 1.5)) <= 1e-10);
}

TEST_CASE("hydrogen n=2 block") {
    const HydrogenSystem hyd(1.0, constants::fine_structure);
    const auto d = DeformationParams::from_beta(1.0);
    std::vector<BlockState> levels{{2, 0, hydrogen_energy(hyd, 2)}, {2, 1, hydrogen_energy(hyd, 2)}};
    const auto analysis = build_degenerate_blocks(levels, hydrogen_moments(hyd), d, hyd.mass, analytic_degeneracy_tolerance);
    REQUIRE(analysis.blocks.size() == 1);
    const auto& b = analysis.blocks[0];
    CHECK(b.g() == 4);
    CHECK(b.f() == 2);
    for (int i = 0; i < b.g(); ++i)
        for (int j = 0; j < b.g(); ++j)
            if (i != j) CHECK(b.matrix(i, j) == 0.0);
    const double s0 = hydrogen_spectrum(hyd, d, QuantumNumbers::principal(2, 0)).shift;
    const double s1 = hydrogen_spectrum(hyd, d, QuantumNumbers::principal(2, 1)).shift;
    bool saw0 = false;
    bool saw1 = false;
    for (const auto& ds : b.distinct) {
        if (rel(ds.value, s0) <= 1e-10) saw0 = ds.count == 1;
        if (rel(ds.value, s1) <= 1e-10) saw1 = ds.count == 3;
    }
    CHECK(saw0);
    CHECK(saw1);
    CHECK(analysis.warnings.empty());
}

TEST_CASE("single state block") {
    const OscillatorSystem osc(1.0, 1.0);
    const auto d = DeformationParams::from_beta(0.01);
    std::vector<BlockState> levels{{0, 0, oscillator_energy(osc, 0, 0)}};
    const auto analysis = build_degenerate_blocks(levels, oscillator_moments(osc), d, osc.mass, analytic_degeneracy_tolerance);
    REQUIRE(analysis.blocks.size() == 1);
    CHECK(analysis.blocks[0].g() == 1);
    CHECK(rel(analysis.blocks[0].shifts[0], oscillator_spectrum(osc, d, QuantumNumbers::radial(0, 0)).shift) <= 1e-10);
}

TEST_CASE("oscillator shells split") {
    const OscillatorSystem osc(1.0, 1.0);
    const auto d = DeformationParams::from_beta(0.01);
    for (int shell = 0; shell <= 8; ++shell) {
        std::vector<BlockState> levels;
        for (int l = shell % 2; l <= shell; l += 2) levels.push_back({(shell - l) / 2, l, oscillator_energy(osc, (shell - l) / 2, l)});
        const auto analysis = build_degenerate_blocks(levels, oscillator_moments(osc), d, osc.mass, analytic_degeneracy_tolerance);
        REQUIRE(analysis.blocks.size() == 1);
        const auto& b = analysis.blocks[0];
        CHECK(b.g() == (shell + 1) * (shell + 2) / 2);
        CHECK(b.f() == shell / 2 + 1);
        CHECK((b.matrix - b.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("off-diagonal elements are computed for same-l degeneracies") {
    // Two artificial levels sharing l at equal E0 force the full 2x2 (x m) problem.
    const OscillatorSystem osc(1.0, 1.0);
    const auto d = DeformationParams::from_beta(0.01);
    std::vector<BlockState> levels{{0, 0, 2.0}, {1, 0, 2.0}};
    const auto analysis = build_degenerate_blocks(levels, oscillator_moments(osc), d, osc.mass, analytic_degeneracy_tolerance);
    REQUIRE(analysis.blocks.size() == 1);
    const auto& b = analysis.blocks[0];
    CHECK(b.g() == 2);
    CHECK(b.matrix(0, 1) != 0.0);
    CHECK(b.matrix(0, 1) == doctest::Approx(b.matrix(1, 0)).epsilon(1e-12));
    const double tr = b.matrix.trace();
    CHECK(b.shifts[0] + b.shifts[1] == doctest::Approx(tr).epsilon(1e-12));
}

TEST_CASE("near-degenerate levels raise a tolerance warning") {
    const OscillatorSystem osc(1.0, 1.0);
    const auto d = DeformationParams::from_beta(0.01);
    std::vector<BlockState> levels{{0, 0, 2.0}, {0, 1, 2.0 * (1.0 + 5e-10)}};
    const auto analysis = build_degenerate_blocks(levels, oscillator_moments(osc), d, osc.mass, 1e-9);
    CHECK(analysis.blocks.size() == 1);
    CHECK_FALSE(analysis.warnings.empty());
}

TEST_CASE("m independence is bit exact") {
    const HydrogenSystem hyd(1.0, constants::fine_structure);
    const auto d = DeformationParams::from_beta(1.0);
    std::vector<BlockState> levels{{3, 2, hydrogen_energy(hyd, 3)}};
    const auto analysis = build_degenerate_blocks(levels, hydrogen_moments(hyd), d, hyd.mass, analytic_degeneracy_tolerance);
    const auto& b = analysis.blocks.at(0);
    CHECK(b.g() == 5);
    for (int i = 1; i < 5; ++i) CHECK(b.matrix(i, i) == b.matrix(0, 0));
}

}
