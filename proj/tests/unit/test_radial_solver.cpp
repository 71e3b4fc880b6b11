#include "constants.hpp"
#include "errors.hpp"
#include "radial_solver.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace minlen;

namespace {

int sign_changes(const RadialState& s)
{
    double peak = 0.0;
    for (double v : s.u) peak = std::max(peak, std::abs(v));
    int count = 0;
    double last = 0.0;
    for (double v : s.u) {
        if (std::abs(v) < 1e-12 * peak) continue;
        if (last != 0.0 && (v < 0.0) != (last < 0.0)) ++count;
        last = v;
    }
    return count;
}

std::string harmonic_table(double mass, double omega)
{
    std::ostringstream out;
    out.precision(17);
    out << "# r_fm V_eV\n\n";
    for (int i = 0; i <= 400; ++i) {
        const double r_fm = 100.0 * std::pow(4e4, i / 400.0);
        const double r = units::length_to_natural(r_fm);
        out << r_fm << "  " << 0.5 * mass * omega * omega * r * r << "   # row\n";
    }
    return out.str();
}

} // namespace

TEST_SUITE("radial_solver") {

TEST_CASE("potential construction rules") {
    CHECK_THROWS_AS(CentralPotential::power_law(1.0, -2.0), DomainError);
    CHECK_THROWS_AS(CentralPotential::power_law(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(CentralPotential::power_law(-1.0, 2.0), DomainError);
    CHECK_THROWS_AS(CentralPotential::coulomb(-0.1), DomainError);
    CHECK_THROWS_AS(CentralPotential::harmonic(0.0, 1.0), DomainError);
    const auto c = CentralPotential::coulomb(0.5);
    CHECK(c(2.0) == -0.25);
    CHECK(*c.power_exponent() == -1.0);
    CHECK(c.has_threshold());
    const auto h = CentralPotential::harmonic(2.0, 3.0);
    CHECK(h(2.0) == doctest::Approx(0.5 * 2.0 * 9.0 * 4.0).epsilon(1e-15));
    CHECK_FALSE(h.has_threshold());
}

TEST_CASE("tabulated potential parsing") {
    std::istringstream good("# comment\n1.0 -3.0\n2.0 -2.0  # tail\n\n4.0 -1.0\n");
    const auto v = read_tabulated_potential(good);
    CHECK(v(units::length_to_natural(2.0)) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK_FALSE(v.power_exponent().has_value());

    std::istringstream decreasing("1.0 -3.0\n0.5 -2.0\n4.0 -1.0\n");
    CHECK_THROWS_AS(read_tabulated_potential(decreasing), UsageError);
    std::istringstream missing("1.0 -3.0\n2.0\n4.0 -1.0\n");
    CHECK_THROWS_AS(read_tabulated_potential(missing), UsageError);
    std::istringstream garbage("1.0 -3.0\nabc def\n4.0 -1.0\n");
    CHECK_THROWS_AS(read_tabulated_potential(garbage), UsageError);
    std::istringstream short_table("1.0 -3.0\n2.0 -1.0\n");
    CHECK_THROWS_AS(read_tabulated_potential(short_table), UsageError);
    CHECK_THROWS_AS(load_tabulated_potential("/nonexistent/table.txt"), UsageError);
}

TEST_CASE("tabulated interpolation is monotone between samples") {
    std::istringstream in("1 0\n2 0\n3 10\n4 10\n5 10\n");
    const auto v = read_tabulated_potential(in);
    double last = v(units::length_to_natural(1.0));
    for (int i = 1; i <= 400; ++i) {
        const double now = v(units::length_to_natural(1.0 + 4.0 * i / 400.0));
        CHECK(now >= last - 1e-12);
        CHECK(now <= 10.0 + 1e-12);
        last = now;
    }
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS((RadialGrid{1.0, 0.5, 1000, Spacing::Uniform}.validate()), UsageError);
    CHECK_THROWS_AS((RadialGrid{0.0, 5.0, 1000, Spacing::LogUniform}.validate()), UsageError);
    CHECK_THROWS_AS((RadialGrid{0.1, 5.0, 499, Spacing::Uniform}.validate()), UsageError);
    const RadialGrid g{0.1, 10.0, 1001, Spacing::LogUniform};
    const auto r = g.radii();
    CHECK(r.front() == doctest::Approx(0.1));
    CHECK(r.back() == doctest::Approx(10.0));
    CHECK(r.size() == 1001);
}

TEST_CASE("coulomb ground state and invariants") {
    const double m = constants::electron_mass_ev;
    const double a = constants::fine_structure;
    const auto v = CentralPotential::coulomb(a);
    const auto s = solve_bound_state(v, m, 0, 0, default_grid(v, m, 0, 0));
    const double exact = -0.5 * m * a * a;
    CHECK(std::abs(s.e0 - exact) / std::abs(exact) <= 1e-6);
    CHECK(s.nodes == 0);
    CHECK(std::abs(s.norm_residual) <= 1e-10);
    CHECK(std::abs(expectation(s, unit_observable()) - 1.0) <= 1e-10);
    CHECK(s.tail_ratio < 1e-8);
    CHECK(s.points_per_wavelength >= 20.0);
    // u ~ r^{l+1} near the origin
    CHECK(s.u[1] / s.u[0] == doctest::Approx(s.radii[1] / s.radii[0]).epsilon(1e-3));
    // <V> = 2 E0
    CHECK(std::abs(expectation(s, potential_observable(v)) - 2.0 * exact) / std::abs(2.0 * exact) <= 1e-8);
}

TEST_CASE("oscillator level and node count") {
    const double m = 1.0;
    const double w = 1.0;
    const auto v = CentralPotential::harmonic(m, w);
    const auto s = solve_bound_state(v, m, 1, 2, default_grid(v, m, 1, 2));
    CHECK(std::abs(s.e0 - 5.5) / 5.5 <= 1e-8);
    const auto s3 = solve_bound_state(v, m, 3, 0, default_grid(v, m, 3, 0));
    CHECK(s3.nodes == 3);
    CHECK(sign_changes(s3) == 3);
    CHECK(s3.u[1] / s3.u[0] == doctest::Approx(s3.radii[1] / s3.radii[0]).epsilon(1e-3));

    // Ground state <V^2> = k^2 <r^4> = k^2 15 / (4 lambda^4)
    const auto g = solve_bound_state(v, m, 0, 0, default_grid(v, m, 0, 0));
    const double k = 0.5 * m * w * w;
    const double oracle = k * k * 15.0 / (4.0 * m * m * w * w);
    CHECK(std::abs(expectation(g, potential_squared_observable(v)) - oracle) / oracle <= 1e-8);
}

TEST_CASE("linear potential matches the first Airy zero") {
    const double m = 1.0;
    const double c = 1.0;
    const auto v = CentralPotential::power_law(c, 1.0);
    const auto s = solve_bound_state(v, m, 0, 0, default_grid(v, m, 0, 0));
    const double exact = std::cbrt(c * c / (2.0 * m)) * 2.338107410459767;
    CHECK(std::abs(s.e0 - exact) / exact <= 1e-6);
}

TEST_CASE("solver is deterministic") {
    const auto v = CentralPotential::coulomb(0.1);
    const auto g = default_grid(v, 1.0, 2, 1);
    const auto a = solve_bound_state(v, 1.0, 2, 1, g);
    const auto b = solve_bound_state(v, 1.0, 2, 1, g);
    CHECK(a.e0 == b.e0);
    CHECK(a.u == b.u);
}

TEST_CASE("distinct states are orthogonal") {
    const auto v = CentralPotential::harmonic(1.0, 1.0);
    const auto grid = default_grid(v, 1.0, 4, 1);
    for (int a = 0; a <= 3; ++a) {
        const auto sa = solve_bound_state(v, 1.0, a, 1, grid);
        for (int b = a + 1; b <= 4; ++b) {
            const auto sb = solve_bound_state(v, 1.0, b, 1, grid);
            CHECK(std::abs(matrix_element(sa, sb, unit_observable())) <= 1e-8);
        }
    }
}

TEST_CASE("step halving converges at fourth order") {
    const auto v = CentralPotential::harmonic(1.0, 1.0);
    const double exact = 3.5;
    auto err = [&](int points) {
        auto g = default_grid(v, 1.0, 1, 0);
        g.points = points;
        return std::abs(solve_bound_state(v, 1.0, 1, 0, g).e0 - exact);
    };
    const double coarse = err(1000);
    const double fine = err(1999);
    CHECK(coarse / fine >= 8.0);
}

TEST_CASE("errors") {
    const auto v = CentralPotential::coulomb(0.1);
    const auto g = default_grid(v, 1.0, 0, 0);
    CHECK_THROWS_AS(solve_bound_state(v, 1.0, -1, 0, g), UsageError);
    CHECK_THROWS_AS(solve_bound_state(v, -1.0, 0, 0, g), DomainError);

    // A shallow square-ish well holds only a couple of levels.
    std::istringstream in("1 -5\n5000 -5\n10000 0\n20000 0\n40000 0\n");
    const auto well = read_tabulated_potential(in);
    const double m = constants::electron_mass_ev;
    const auto wg = default_grid(well, m, 40, 0, units::length_to_natural(1000.0));
    CHECK_THROWS_AS(solve_bound_state(well, m, 40, 0, wg), NoBoundStateError);

    const auto s = solve_bound_state(v, 1.0, 0, 0, g);
    const RadialObservable too_singular{[](double r) { return 1.0 / (r * r * r); }, -3.0};
    CHECK_THROWS_AS(expectation(s, too_singular), DomainError);
    auto other = g;
    other.points += 2;
    const auto t = solve_bound_state(v, 1.0, 0, 0, other);
    CHECK_THROWS_AS(matrix_element(s, t, unit_observable()), UsageError);
}

TEST_CASE("tabulated harmonic well reproduces the oscillator") {
    const double m = constants::electron_mass_ev;
    const double w = 1.0;
    std::istringstream in(harmonic_table(m, w));
    const auto v = read_tabulated_potential(in);
    for (int l = 0; l <= 2; ++l) {
        const auto s = solve_bound_state(v, m, 1, l, default_grid(v, m, 1, l));
        const double exact = w * (2.0 + l + 1.5);
        CHECK(std::abs(s.e0 - exact) / exact <= 1e-6);
    }
}

}
