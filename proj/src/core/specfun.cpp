#include "specfun.hpp"

#include "errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <utility>

namespace minlen::specfun {

namespace {

void validate(int n, double alpha)
{
    if (n < 0) {
        throw DomainError("Laguerre degree must be non-negative");
    }
    if (!(alpha > -1.0)) {
        throw DomainError("Laguerre order alpha must exceed -1");
    }
}

struct OrthonormalValue {
    double p;  // normalized p_N(x)
    double dp; // d/dx p_N(x)
};

// Orthonormal Laguerre recurrence for the Jacobi matrix with diagonal
// 2k+1+alpha and off-diagonal sqrt(k(k+alpha)). p_0 = 1/sqrt(Gamma(alpha+1)).
OrthonormalValue orthonormal_at(int n, double alpha, double x, double* christoffel_sum)
{
    double p_prev = 0.0;
    double p = std::exp(-0.5 * std::lgamma(alpha + 1.0));
    double dp_prev = 0.0;
    double dp = 0.0;
    double sum = p * p;
    for (int k = 0; k < n; ++k) {
        const double a_k = 2.0 * k + 1.0 + alpha;
        const double b_k = std::sqrt(k * (k + alpha));
        const double b_next = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
        const double p_next = ((x - a_k) * p - b_k * p_prev) / b_next;
        const double dp_next = ((x - a_k) * dp + p - b_k * dp_prev) / b_next;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        if (k + 1 < n) {
            sum += p * p;
        }
    }
    if (christoffel_sum != nullptr) {
        *christoffel_sum = sum;
    }
    return {p, dp};
}

} // namespace

double laguerre(LaguerreParams params, double x)
{
    validate(params.degree, params.alpha);
    if (!(x >= 0.0)) {
        throw DomainError("Laguerre argument must be non-negative");
    }
    const double alpha = params.alpha;
    double l_prev = 0.0;
    double l = 1.0;
    for (int k = 0; k < params.degree; ++k) {
        const double l_next = ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * l_prev) / (k + 1.0);
        l_prev = l;
        l = l_next;
    }
    return l;
}

void laguerre_sequence(int n, double alpha, double x, std::vector<double>& out)
{
    validate(n, alpha);
    out.resize(static_cast<std::size_t>(n) + 1);
    out[0] = 1.0;
    if (n == 0) {
        return;
    }
    out[1] = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        out[k + 1] = ((2.0 * k + 1.0 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) / (k + 1.0);
    }
}

double laguerre_sum_identity_check(int n, double alpha, double x)
{
    validate(n, alpha);
    std::vector<double> seq;
    laguerre_sequence(n, alpha, x, seq);
    double sum = 0.0;
    for (double v : seq) {
        sum += v;
    }
    return std::abs(sum - laguerre({n, alpha + 1.0}, x));
}

double sum_formula_check(int a, int b)
{
    if (a < 0 || b < 0) {
        throw DomainError("summation formula needs a, b >= 0");
    }
    if (a + b + 1 > 20) {
        throw DomainError("summation formula: a + b + 1 exceeds exact 64-bit range (max 20)");
    }
    auto falling = [](std::uint64_t top, std::uint64_t count) {
        // top! / (top - count)!
        std::uint64_t r = 1;
        for (std::uint64_t i = 0; i < count; ++i) {
            r *= top - i;
        }
        return r;
    };
    std::uint64_t lhs = 0;
    for (int p = 0; p <= b; ++p) {
        lhs += falling(static_cast<std::uint64_t>(p + a), static_cast<std::uint64_t>(a));
    }
    // (a+b+1)! / ((1+a) b!) = [(a+b+1)!/b!] / (a+1)
    const std::uint64_t numerator =
        falling(static_cast<std::uint64_t>(a + b + 1), static_cast<std::uint64_t>(a + 1));
    const std::uint64_t denominator = static_cast<std::uint64_t>(a + 1);
    if (numerator % denominator != 0) {
        return 1.0; // not even an integer: identity broken
    }
    const std::uint64_t rhs = numerator / denominator;
    return lhs > rhs ? static_cast<double>(lhs - rhs) : static_cast<double>(rhs - lhs);
}

double ln_gamma(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("ln_gamma requires x > 0");
    }
    return std::lgamma(x);
}

QuadratureRule gauss_laguerre(double alpha, int points)
{
    if (!(alpha > -1.0)) {
        throw DomainError("Gauss-Laguerre weight order alpha must exceed -1");
    }
    if (points < 1 || points > max_quadrature_points) {
        throw DomainError("Gauss-Laguerre point count must be in [1, 256]");
    }
    const auto n = static_cast<Eigen::Index>(points);
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 0));
    for (Eigen::Index k = 0; k < n; ++k) {
        diag[k] = 2.0 * static_cast<double>(k) + 1.0 + alpha;
        if (k + 1 < n) {
            const double kk = static_cast<double>(k + 1);
            sub[k] = std::sqrt(kk * (kk + alpha));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Gauss-Laguerre: tridiagonal eigen-solve failed for " + std::to_string(points) +
                             " points");
    }

    QuadratureRule rule;
    rule.alpha = alpha;
    rule.nodes.resize(static_cast<std::size_t>(points));
    rule.weights.resize(static_cast<std::size_t>(points));

    constexpr int max_newton = 100;
    for (int i = 0; i < points; ++i) {
        double x = solver.eigenvalues()[i];
        int iter = 0;
        double last_step = std::numeric_limits<double>::infinity();
        bool converged = false;
        for (; iter < max_newton; ++iter) {
            const auto [p, dp] = orthonormal_at(points, alpha, x, nullptr);
            const double step = p / dp;
            if (!std::isfinite(step)) {
                break;
            }
            // stop at machine precision or once roundoff stalls the iteration
            if (std::abs(step) >= std::abs(last_step) && std::abs(step) <= 1e-12 * std::abs(x)) {
                converged = true;
                break;
            }
            x -= step;
            last_step = step;
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
                converged = true;
                break;
            }
        }
        if (!converged || !(x > 0.0)) {
            std::ostringstream msg;
            msg << "Gauss-Laguerre node " << i << " of " << points << " (alpha=" << alpha
                << ") did not converge after " << iter << " Newton steps; last x=" << x
                << ", eigenvalue seed=" << solver.eigenvalues()[i];
            throw NumericalError(msg.str());
        }
        double christoffel = 0.0;
        orthonormal_at(points, alpha, x, &christoffel);
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 1.0 / christoffel;
    }
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) {
        if (!(rule.nodes[i] > rule.nodes[i - 1])) {
            throw NumericalError("Gauss-Laguerre: nodes not strictly increasing after refinement");
        }
    }
    return rule;
}

std::shared_ptr<const QuadratureRule> cached_gauss_laguerre(double alpha, int points)
{
    using Key = std::pair<double, int>;
    static std::shared_mutex mutex;
    static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;

    const Key key{alpha, points};
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    auto rule = std::make_shared<const QuadratureRule>(gauss_laguerre(alpha, points));
    std::unique_lock lock(mutex);
    auto [it, inserted] = cache.emplace(key, std::move(rule));
    return it->second;
}

} // namespace minlen::specfun
