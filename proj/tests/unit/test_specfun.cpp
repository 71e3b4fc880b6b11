#include "errors.hpp"
#include "specfun.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

#include <cmath>
#include <future>
#include <random>
#include <vector>

using namespace minlen;
using namespace minlen::specfun;
using boost::multiprecision::cpp_rational;

namespace {

// L_n^alpha(x) = sum_k (-1)^k binom(n + alpha, n - k) x^k / k!, exact for rational alpha and x.
cpp_rational exact_laguerre(int n, cpp_rational alpha, cpp_rational x)
{
    cpp_rational sum = 0;
    for (int k = 0; k <= n; ++k) {
        cpp_rational binom = 1;
        for (int j = 1; j <= n - k; ++j) {
            binom *= (alpha + k + j);
            binom /= j;
        }
        cpp_rational term = binom;
        for (int j = 1; j <= k; ++j) {
            term *= x;
            term /= j;
        }
        sum += (k % 2 == 0) ? term : cpp_rational(-term);
    }
    return sum;
}

double gamma_fn(double x) { return std::exp(ln_gamma(x)); }

} // namespace

TEST_SUITE("specfun") {

TEST_CASE("laguerre examples") {
    CHECK(laguerre({0, 0.5}, 3.0) == 1.0);
    CHECK(laguerre({0, 7.25}, 0.0) == 1.0);
    CHECK(laguerre({1, 0.5}, 2.0) == doctest::Approx(-0.5).epsilon(1e-15));
    const double lhs = laguerre({3, 0.5}, 1.7);
    const double rhs = laguerre({3, 1.5}, 1.7) - laguerre({2, 1.5}, 1.7);
    CHECK(std::abs(lhs - rhs) <= 1e-13);
}

TEST_CASE("laguerre domain errors") {
    CHECK_THROWS_AS(laguerre({2, -1.0}, 1.0), DomainError);
    CHECK_THROWS_AS(laguerre({2, -1.5}, 1.0), DomainError);
    CHECK_THROWS_AS(laguerre({-1, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(laguerre({2, 0.0}, -0.1), DomainError);
}

TEST_CASE("recurrence matches exact rational evaluation") {
    constexpr double tolerance = 1e-12;
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
        for (int twice_alpha = 1; twice_alpha <= 21; twice_alpha += 2) {
            for (int eighths = 0; eighths <= 800; eighths += 37) {
                const cpp_rational alpha(twice_alpha, 2);
                const cpp_rational x(eighths, 8);
                const double exact = static_cast<double>(exact_laguerre(n, alpha, x));
                const double got = laguerre({n, twice_alpha / 2.0}, eighths / 8.0);
                const double err = exact == 0.0 ? std::abs(got) : std::abs(got - exact) / std::abs(exact);
                worst = std::max(worst, err);
            }
        }
    }
    INFO("worst relative error ", worst);
    CHECK(worst <= tolerance);
}

TEST_CASE("high degree recurrence stays finite") {
    for (double x : {0.0, 1.0, 10.0, 50.0, 100.0}) {
        const double v = laguerre({50, 10.5}, x);
        CHECK(std::isfinite(v));
    }
    CHECK(laguerre({50, 0.5}, 0.0) == doctest::Approx(std::exp(ln_gamma(51.5) - ln_gamma(51.0) - ln_gamma(1.5))).epsilon(1e-12));
}

TEST_CASE("lowering identity on a random grid") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> xs(0.0, 20.0);
    std::uniform_int_distribution<int> ns(1, 10);
    std::uniform_real_distribution<double> as(0.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const int n = ns(rng);
        const double a = as(rng);
        const double x = xs(rng);
        const double r = laguerre({n, a - 1.0}, x) - (laguerre({n, a}, x) - laguerre({n - 1, a}, x));
        CHECK(std::abs(r) <= 1e-12 * std::max(1.0, std::abs(laguerre({n, a - 1.0}, x))));
    }
}

TEST_CASE("sequence agrees with single evaluations") {
    std::vector<double> seq;
    laguerre_sequence(8, 2.5, 3.3, seq);
    REQUIRE(seq.size() == 9);
    for (int k = 0; k <= 8; ++k) CHECK(seq[k] == laguerre({k, 2.5}, 3.3));
}

TEST_CASE("sum identity") {
    CHECK(laguerre_sum_identity_check(0, 0.7, 2.0) == 0.0);
    CHECK(laguerre_sum_identity_check(4, 1.0, 0.9) <= 1e-12);
    CHECK(laguerre_sum_identity_check(6, 2.5, 3.3) <= 1e-11);
    for (int n = 0; n <= 8; ++n)
        for (double x : {0.0, 0.5, 2.0, 7.5})
            CHECK(laguerre_sum_identity_check(n, 1.5, x) <= 1e-11);
}

TEST_CASE("summation formula") {
    CHECK(sum_formula_check(0, 0) == 0.0);
    CHECK(sum_formula_check(2, 3) == 0.0);
    CHECK(sum_formula_check(5, 4) == 0.0);
    for (int a = 0; a <= 19; ++a)
        for (int b = 0; a + b + 1 <= 20; ++b) CHECK(sum_formula_check(a, b) == 0.0);
    CHECK_THROWS_AS(sum_formula_check(10, 10), DomainError);
    CHECK_THROWS_AS(sum_formula_check(-1, 2), DomainError);
}

TEST_CASE("ln_gamma") {
    CHECK(ln_gamma(1.0) == 0.0);
    CHECK(ln_gamma(1.5) == doctest::Approx(-0.1207822376352452).epsilon(1e-14));
    CHECK(ln_gamma(11.0) == doctest::Approx(15.104412573075516).epsilon(1e-14));
    CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
    CHECK_THROWS_AS(ln_gamma(-2.5), DomainError);
}

TEST_CASE("gauss-laguerre small rules") {
    const auto one = gauss_laguerre(0.0, 1);
    REQUIRE(one.size() == 1);
    CHECK(one.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

    // alpha = 0, N = 2: nodes 2 -+ sqrt(2), weights (2 +- sqrt(2)) / 4
    const auto two = gauss_laguerre(0.0, 2);
    CHECK(two.nodes[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
    CHECK(two.nodes[1] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK(two.weights[0] == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-14));
    CHECK(two.weights[1] == doctest::Approx((2.0 - std::sqrt(2.0)) / 4.0).epsilon(1e-14));

    const auto eight = gauss_laguerre(0.5, 8);
    CHECK(std::abs(eight.integrate([](double) { return 1.0; }) - std::sqrt(M_PI) / 2.0) <= 1e-13);
}

TEST_CASE("gauss-laguerre exactness and rule invariants") {
    for (double alpha : {-0.5, 0.0, 0.5, 2.5, 7.0}) {
        for (int n : {1, 2, 3, 5, 8, 13, 20}) {
            const auto rule = gauss_laguerre(alpha, n);
            for (std::size_t i = 0; i < rule.size(); ++i) {
                CHECK(rule.nodes[i] > 0.0);
                CHECK(rule.weights[i] > 0.0);
                if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
            }
            for (int k = 0; k <= 2 * n - 1; ++k) {
                const double exact = gamma_fn(k + alpha + 1.0);
                const double got = rule.integrate([k](double x) { return std::pow(x, k); });
                INFO("alpha=", alpha, " n=", n, " k=", k);
                CHECK(std::abs(got - exact) / exact <= 1e-12);
            }
        }
    }
}

TEST_CASE("gauss-laguerre limits") {
    CHECK_NOTHROW(gauss_laguerre(0.5, 256));
    const auto big = gauss_laguerre(0.5, 256);
    CHECK(big.integrate([](double) { return 1.0; }) == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(gauss_laguerre(0.5, 257), DomainError);
    CHECK_THROWS_AS(gauss_laguerre(0.5, 0), DomainError);
    CHECK_THROWS_AS(gauss_laguerre(-1.0, 8), DomainError);
}

TEST_CASE("orthonormality and convergence under point doubling") {
    constexpr double alpha = 0.5;
    auto residual = [&](int points) {
        const auto rule = gauss_laguerre(alpha, points);
        double worst = 0.0;
        for (int n = 0; n <= 6; ++n) {
            for (int m = 0; m <= 6; ++m) {
                const double got = rule.integrate([&](double x) { return laguerre({n, alpha}, x) * laguerre({m, alpha}, x); });
                const double norm = std::exp(ln_gamma(alpha + n + 1.0) - ln_gamma(n + 1.0));
                worst = std::max(worst, n == m ? std::abs(got - norm) / norm : std::abs(got) / norm);
            }
        }
        return worst;
    };
    CHECK(residual(32) <= 1e-11);
    // Below 7 points the degree-12 integrand is under-resolved; above, only roundoff remains.
    constexpr double roundoff_floor = 1e-13;
    double previous = residual(2);
    for (int points : {4, 8, 16, 32, 64, 128}) {
        const double now = residual(points);
        INFO("points=", points, " residual=", now, " previous=", previous);
        CHECK(now <= std::max(previous, roundoff_floor));
        previous = now;
    }
}

TEST_CASE("rule cache is shared and thread safe") {
    const auto a = cached_gauss_laguerre(1.5, 40);
    const auto b = cached_gauss_laguerre(1.5, 40);
    CHECK(a.get() == b.get());
    std::vector<std::future<const QuadratureRule*>> futures;
    for (int i = 0; i < 8; ++i)
        futures.push_back(std::async(std::launch::async, [] { return cached_gauss_laguerre(3.25, 48).get(); }));
    const QuadratureRule* first = futures[0].get();
    for (std::size_t i = 1; i < futures.size(); ++i) CHECK(futures[i].get() == first);
    const auto fresh = gauss_laguerre(3.25, 48);
    CHECK(fresh.nodes == first->nodes);
    CHECK(fresh.weights == first->weights);
}

}
