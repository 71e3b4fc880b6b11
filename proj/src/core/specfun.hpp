#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace minlen::specfun {

/// Degree n >= 0 and order alpha > -1 of a generalized Laguerre polynomial.
struct LaguerreParams {
    int degree = 0;
    double alpha = 0.0;
};

/// L_n^alpha(x) by upward three-term recurrence.
double laguerre(LaguerreParams params, double x);

/// Fills out[k] = L_k^alpha(x) for k = 0..n.
void laguerre_sequence(int n, double alpha, double x, std::vector<double>& out);

/// |sum_{m=0}^{n} L_m^alpha(x) - L_n^{alpha+1}(x)|
double laguerre_sum_identity_check(int n, double alpha, double x);

/// |sum_{p=0}^{b} (p+a)!/p! - (a+b+1)!/((1+a) b!)| in exact integer arithmetic.
/// Requires a + b + 1 <= 20.
double sum_formula_check(int a, int b);

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Gauss rule for the weight x^alpha e^{-x} on (0, inf).
struct QuadratureRule {
    double alpha = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    /// sum_i w_i f(x_i)
    template <typename F>
    double integrate(F&& f) const
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            acc += weights[i] * f(nodes[i]);
        }
        return acc;
    }
};

inline constexpr int max_quadrature_points = 256;

/// Golub-Welsch eigenvalues polished by Newton on the orthonormal recurrence;
/// weights from the Christoffel function.
QuadratureRule gauss_laguerre(double alpha, int points);

/// Memoized gauss_laguerre keyed by (alpha, points). Safe for concurrent callers.
std::shared_ptr<const QuadratureRule> cached_gauss_laguerre(double alpha, int points);

} // namespace minlen::specfun
