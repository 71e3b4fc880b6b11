#include "perturbation.hpp"

#include "errors.hpp"
#include "specfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace minlen::perturbation {

double shift_matrix_element(double e0_a, double e0_b, double v_ab, double v2_ab, double beta, double mass,
                            bool same_n)
{
    const double diag = same_n ? e0_a * e0_a : 0.0;
    return 4.0 * beta * mass * (diag - (e0_a + e0_b) * v_ab + v2_ab);
}

double diagonal_shift(double e0, double v, double v2, double beta, double mass)
{
    return 4.0 * beta * mass * (e0 * e0 - 2.0 * e0 * v + v2);
}

double power_law_shift(double e0, double v2, double p, double beta, double mass)
{
    if (p == -2.0) {
        throw DomainError("virial specialization is singular for exponent p = -2");
    }
    return 4.0 * beta * mass * (e0 * e0 * (p - 2.0) / (p + 2.0) + v2);
}

double oscillator_shift_integral(const OscillatorSystem& sys, const QuantumNumbers& qn, const DeformationParams& d,
                                 int points)
{
    if (qn.convention != Convention::RadialN) {
        throw UsageError("oscillator levels use the radial-n convention");
    }
    qn.validate();
    const auto rule = specfun::cached_gauss_laguerre(qn.l + 2.5, points);
    const double integral = rule->integrate([&](double x) {
        const double lag = specfun::laguerre({qn.n, qn.l + 0.5}, x);
        return lag * lag;
    });
    const double lambda2 = sys.lambda() * sys.lambda();
    const double k = sys.strength();
    const double ratio = std::exp(specfun::ln_gamma(qn.n + 1.0) - specfun::ln_gamma(qn.n + qn.l + 1.5));
    return 4.0 * d.beta() * sys.mass * ratio * k * k / (lambda2 * lambda2) * integral;
}

double hydrogen_shift_integral(const HydrogenSystem& sys, const QuantumNumbers& qn, const DeformationParams& d,
                               int points)
{
    if (qn.convention != Convention::PrincipalN) {
        throw UsageError("hydrogen levels use the principal-n convention");
    }
    qn.validate();
    const int k = qn.n - qn.l - 1;
    const auto rule = specfun::cached_gauss_laguerre(2.0 * qn.l, points);
    const double integral = rule->integrate([&](double x) {
        const double lag = specfun::laguerre({k, 2.0 * qn.l + 1.0}, x);
        return lag * lag;
    });
    const double e0 = hydrogen_energy(sys, qn.n);
    const double g = sys.gamma(qn.n);
    const double a2 = sys.alpha * sys.alpha;
    const double ratio = std::exp(specfun::ln_gamma(k + 1.0) - specfun::ln_gamma(qn.n + qn.l + 1.0)) / qn.n;
    const double beta_m = d.beta() * sys.mass;
    return -12.0 * beta_m * e0 * e0 + 8.0 * beta_m * g * g * a2 * ratio * integral;
}

namespace {

std::vector<DistinctShift> distinct_values(const std::vector<double>& sorted)
{
    std::vector<DistinctShift> out;
    double scale = 0.0;
    for (double v : sorted) {
        scale = std::max(scale, std::abs(v));
    }
    for (double v : sorted) {
        if (!out.empty() && std::abs(v - out.back().value) <= distinct_shift_tolerance * scale) {
            ++out.back().count;
        } else {
            out.push_back({v, 1});
        }
    }
    return out;
}

bool within(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

} // namespace

BlockAnalysis build_degenerate_blocks(std::span<const BlockState> levels, const MomentSource& moments,
                                      const DeformationParams& d, double mass, double relative_tolerance)
{
    std::vector<BlockState> sorted(levels.begin(), levels.end());
    std::sort(sorted.begin(), sorted.end(), [](const BlockState& a, const BlockState& b) {
        return std::tie(a.e0, a.l, a.n) < std::tie(b.e0, b.l, b.n);
    });

    BlockAnalysis analysis;
    std::vector<std::vector<BlockState>> groups;
    for (const auto& s : sorted) {
        if (!groups.empty() && within(groups.back().back().e0, s.e0, relative_tolerance)) {
            const double prev = groups.back().back().e0;
            if (!within(prev, s.e0, 1e-2 * relative_tolerance)) {
                std::ostringstream msg;
                msg << "levels E0=" << prev << " eV and E0=" << s.e0
                    << " eV merged at tolerance " << relative_tolerance << " but separate at "
                    << 1e-2 * relative_tolerance << "; grouping as one block, alternative keeps them apart";
                analysis.warnings.push_back({prev, s.e0, msg.str()});
            }
            groups.back().push_back(s);
        } else {
            groups.push_back({s});
        }
    }

    for (auto& group : groups) {
        std::sort(group.begin(), group.end(),
                  [](const BlockState& a, const BlockState& b) { return std::tie(a.l, a.n) < std::tie(b.l, b.n); });
        DegenerateBlock block;
        double e0_sum = 0.0;
        for (const auto& s : group) {
            e0_sum += s.e0;
        }
        block.e0 = e0_sum / static_cast<double>(group.size());

        std::vector<std::size_t> level_of;
        for (std::size_t gi = 0; gi < group.size(); ++gi) {
            for (int m = -group[gi].l; m <= group[gi].l; ++m) {
                block.members.push_back({group[gi].n, group[gi].l, m});
                level_of.push_back(gi);
            }
        }

        // Radial moments depend only on the (n, l) pair, never on m.
        std::map<std::pair<std::size_t, std::size_t>, Moments> cache;
        auto moment = [&](std::size_t a, std::size_t b) {
            const auto key = std::minmax(a, b);
            auto it = cache.find(key);
            if (it == cache.end()) {
                it = cache.emplace(key, moments(group[key.first], group[key.second])).first;
            }
            return it->second;
        };

        const auto g = static_cast<Eigen::Index>(block.members.size());
        block.matrix = Eigen::MatrixXd::Zero(g, g);
        bool diagonal = true;
        for (Eigen::Index i = 0; i < g; ++i) {
            for (Eigen::Index j = i; j < g; ++j) {
                const auto& a = block.members[static_cast<std::size_t>(i)];
                const auto& b = block.members[static_cast<std::size_t>(j)];
                if (a.l != b.l || a.m != b.m) {
                    continue;
                }
                const std::size_t la = level_of[static_cast<std::size_t>(i)];
                const std::size_t lb = level_of[static_cast<std::size_t>(j)];
                const Moments mom = moment(la, lb);
                const double value = shift_matrix_element(group[la].e0, group[lb].e0, mom.v, mom.v2, d.beta(), mass,
                                                          a.n == b.n);
                block.matrix(i, j) = value;
                block.matrix(j, i) = value;
                if (i != j && value != 0.0) {
                    diagonal = false;
                }
            }
        }

        if (diagonal) {
            block.shifts.assign(block.matrix.diagonal().begin(), block.matrix.diagonal().end());
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.matrix, Eigen::EigenvaluesOnly);
            if (solver.info() != Eigen::Success) {
                throw NumericalError("degenerate block eigen-decomposition failed at E0=" + std::to_string(block.e0));
            }
            block.shifts.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
        }
        std::sort(block.shifts.begin(), block.shifts.end());
        block.distinct = distinct_values(block.shifts);
        analysis.blocks.push_back(std::move(block));
    }
    return analysis;
}

MomentSource oscillator_moments(const OscillatorSystem& sys, int points)
{
    const double k = sys.strength();
    return [sys, k, points](const BlockState& a, const BlockState& b) {
        const auto qa = QuantumNumbers::radial(a.n, a.l);
        const auto qb = QuantumNumbers::radial(b.n, b.l);
        Moments m;
        m.v = oscillator_expectation(sys, qa, qb, [k](double r) { return k * r * r; }, points);
        m.v2 = oscillator_expectation(sys, qa, qb, [k](double r) { return k * k * r * r * r * r; }, points);
        return m;
    };
}

MomentSource hydrogen_moments(const HydrogenSystem& sys, int points)
{
    const double alpha = sys.alpha;
    return [sys, alpha, points](const BlockState& a, const BlockState& b) {
        const auto qa = QuantumNumbers::principal(a.n, a.l);
        const auto qb = QuantumNumbers::principal(b.n, b.l);
        Moments m;
        m.v = hydrogen_expectation(sys, qa, qb, [alpha](double r) { return -alpha / r; }, points);
        m.v2 = hydrogen_expectation(sys, qa, qb, [alpha](double r) { return alpha * alpha / (r * r); }, points);
        return m;
    };
}

} // namespace minlen::perturbation
