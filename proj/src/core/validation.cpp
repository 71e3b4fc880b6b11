#include "validation.hpp"

#include "analytic.hpp"
#include "bounds.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "perturbation.hpp"
#include "radial_solver.hpp"
#include "specfun.hpp"
#include "system.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace minlen::validation {

namespace {

double rel(double value, double reference)
{
    if (reference == 0.0) {
        return std::abs(value);
    }
    return std::abs(value - reference) / std::abs(reference);
}

CheckResult run_check(std::string name, std::string description, double tolerance, Comparison cmp,
                      const std::function<double()>& body)
{
    CheckResult r;
    r.name = std::move(name);
    r.description = std::move(description);
    r.tolerance = tolerance;
    r.comparison = cmp;
    try {
        r.observed = body();
        r.passed = cmp == Comparison::AtMost ? r.observed <= tolerance : r.observed >= tolerance;
    } catch (const std::exception& e) {
        r.observed = std::numeric_limits<double>::quiet_NaN();
        r.passed = false;
        r.note = e.what();
    }
    return r;
}

struct Reduced {
    OscillatorSystem osc{1.0, 1.0};
    HydrogenSystem hyd{1.0, constants::fine_structure};
    DeformationParams osc_d = DeformationParams::from_beta(1e-2 / 1.5);
    DeformationParams hyd_d =
        DeformationParams::from_beta(1e-2 / (0.5 * constants::fine_structure * constants::fine_structure));
};

} // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options)
{
    const int points = options.quadrature_points;
    const Reduced sys;
    std::vector<CheckResult> out;
    auto add = [&](std::string name, std::string description, double tol, Comparison cmp,
                   const std::function<double()>& body) {
        out.push_back(run_check(std::move(name), std::move(description), tol, cmp, body));
    };
    const auto at_most = Comparison::AtMost;

    add("units.round_trip", "fm -> eV^-1 -> fm relative error", 1e-15, at_most, [] {
        double worst = 0.0;
        for (double fm : {1e-6, 0.01, 0.8751, 197.3269804, 5.29e4}) {
            worst = std::max(worst, rel(units::natural_to_length(units::length_to_natural(fm)), fm));
        }
        return worst;
    });

    add("specfun.lowering_identity", "L_n^{a-1} = L_n^a - L_{n-1}^a on 100 random points, n <= 10", 1e-12, at_most,
        [] {
            std::mt19937_64 rng(20240601);
            std::uniform_int_distribution<int> deg(1, 10);
            std::uniform_real_distribution<double> ord(0.0, 10.0);
            std::uniform_real_distribution<double> arg(0.0, 10.0);
            double worst = 0.0;
            for (int i = 0; i < 100; ++i) {
                const int n = deg(rng);
                const double a = ord(rng);
                const double x = arg(rng);
                const double lhs = specfun::laguerre({n, a - 1.0}, x);
                const double hi = specfun::laguerre({n, a}, x);
                const double lo = specfun::laguerre({n - 1, a}, x);
                const double scale = std::max({1.0, std::abs(hi), std::abs(lo)});
                worst = std::max(worst, std::abs(lhs - (hi - lo)) / scale);
            }
            return worst;
        });

    add("specfun.orthogonality", "integral e^-x x^a L_n^a L_m^a = Gamma(a+n+1)/n! delta_nm, n,m <= 6, a = 1/2",
        1e-11, at_most, [points] {
            const double a = 0.5;
            const auto rule = specfun::gauss_laguerre(a, points);
            double worst = 0.0;
            for (int n = 0; n <= 6; ++n) {
                for (int m = 0; m <= 6; ++m) {
                    const double integral = rule.integrate(
                        [&](double x) { return specfun::laguerre({n, a}, x) * specfun::laguerre({m, a}, x); });
                    const double hn = std::exp(specfun::ln_gamma(a + n + 1.0) - specfun::ln_gamma(n + 1.0));
                    const double hm = std::exp(specfun::ln_gamma(a + m + 1.0) - specfun::ln_gamma(m + 1.0));
                    const double expected = n == m ? hn : 0.0;
                    worst = std::max(worst, std::abs(integral - expected) / std::sqrt(hn * hm));
                }
            }
            return worst;
        });

    add("specfun.sum_identity", "sum_{m<=n} L_m^a = L_n^{a+1}, n <= 8", 1e-11, at_most, [] {
        double worst = 0.0;
        for (int n = 0; n <= 8; ++n) {
            for (double a : {0.0, 0.5, 1.0, 2.5, 5.0}) {
                for (double x : {0.0, 0.3, 0.9, 3.3, 7.5, 12.0}) {
                    const double scale = std::max(1.0, std::abs(specfun::laguerre({n, a + 1.0}, x)));
                    worst = std::max(worst, specfun::laguerre_sum_identity_check(n, a, x) / scale);
                }
            }
        }
        return worst;
    });

    add("specfun.summation_formula", "sum_{p<=b} (p+a)!/p! = (a+b+1)!/((1+a) b!) exactly, a+b+1 <= 20", 0.0,
        at_most, [] {
            double worst = 0.0;
            for (int a = 0; a <= 19; ++a) {
                for (int b = 0; a + b + 1 <= 20; ++b) {
                    worst = std::max(worst, specfun::sum_formula_check(a, b));
                }
            }
            return worst;
        });

    add("specfun.quadrature_exactness", "N-point rule integrates x^k, k <= 2N-1 (N = min(points, 20))", 1e-12,
        at_most, [points] {
            const int n = std::min(points, 20);
            double worst = 0.0;
            for (double a : {0.0, 0.5, 2.5}) {
                const auto rule = specfun::gauss_laguerre(a, n);
                for (int k = 0; k <= 2 * n - 1; ++k) {
                    const double got = rule.integrate([k](double x) { return std::pow(x, k); });
                    const double exact = std::exp(specfun::ln_gamma(a + k + 1.0));
                    worst = std::max(worst, rel(got, exact));
                }
            }
            return worst;
        });

    add("analytic.oscillator_orthonormality", "<n l|n' l> = delta, n,n' <= 8, l <= 6", 1e-11, at_most,
        [&sys, points] {
            double worst = 0.0;
            for (int l = 0; l <= 6; ++l) {
                for (int n = 0; n <= 8; ++n) {
                    for (int m = n; m <= 8; ++m) {
                        const double s = oscillator_expectation(sys.osc, QuantumNumbers::radial(n, l),
                                                                QuantumNumbers::radial(m, l),
                                                                [](double) { return 1.0; }, points);
                        worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)));
                    }
                }
            }
            return worst;
        });

    add("analytic.hydrogen_orthonormality", "<n l|n' l> = delta, n,n' <= 8, l <= 6", 1e-11, at_most,
        [&sys, points] {
            double worst = 0.0;
            for (int l = 0; l <= 6; ++l) {
                for (int n = l + 1; n <= 8; ++n) {
                    for (int m = n; m <= 8; ++m) {
                        const double s = hydrogen_expectation(sys.hyd, QuantumNumbers::principal(n, l),
                                                              QuantumNumbers::principal(m, l),
                                                              [](double) { return 1.0; }, points);
                        worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)));
                    }
                }
            }
            return worst;
        });

    add("analytic.virial_oscillator", "<V> = 2 E0/(p+2) for p = 2, n <= 8, l <= 6", 1e-10, at_most,
        [&sys, points] {
            const double k = sys.osc.strength();
            double worst = 0.0;
            for (int n = 0; n <= 8; ++n) {
                for (int l = 0; l <= 6; ++l) {
                    const auto qn = QuantumNumbers::radial(n, l);
                    const double v = oscillator_expectation(sys.osc, qn, qn, [k](double r) { return k * r * r; },
                                                            points);
                    worst = std::max(worst, rel(v, 0.5 * oscillator_energy(sys.osc, n, l)));
                }
            }
            return worst;
        });

    add("analytic.virial_hydrogen", "<V> = 2 E0/(p+2) for p = -1, n <= 8", 1e-10, at_most, [&sys, points] {
        const double alpha = sys.hyd.alpha;
        double worst = 0.0;
        for (int n = 1; n <= 8; ++n) {
            for (int l = 0; l < n; ++l) {
                const auto qn = QuantumNumbers::principal(n, l);
                const double v =
                    hydrogen_expectation(sys.hyd, qn, qn, [alpha](double r) { return -alpha / r; }, points);
                worst = std::max(worst, rel(v, 2.0 * hydrogen_energy(sys.hyd, n)));
            }
        }
        return worst;
    });

    const double kappa = options.inject_beta2;
    add("route.oscillator", "closed form = shift integral = <(E0-V)^2> = virial route, 2n+l <= 10", 1e-10, at_most,
        [&sys, points, kappa] {
            const auto moments = perturbation::oscillator_moments(sys.osc, points);
            const double beta = sys.osc_d.beta();
            const double m = sys.osc.mass;
            double worst = 0.0;
            for (int shell = 0; shell <= 10; ++shell) {
                for (int l = shell % 2; l <= shell; l += 2) {
                    const int n = (shell - l) / 2;
                    const auto qn = QuantumNumbers::radial(n, l);
                    const double e0 = oscillator_energy(sys.osc, n, l);
                    const double closed = oscillator_spectrum(sys.osc, sys.osc_d, qn).shift;
                    const double integral = perturbation::oscillator_shift_integral(sys.osc, qn, sys.osc_d, points) +
                                            kappa * beta * beta * m * m * e0 * e0 * e0;
                    const auto mom = moments({n, l, e0}, {n, l, e0});
                    const double diag = perturbation::diagonal_shift(e0, mom.v, mom.v2, beta, m);
                    const double virial = perturbation::power_law_shift(e0, mom.v2, 2.0, beta, m);
                    worst = std::max({worst, rel(integral, closed), rel(diag, closed), rel(virial, closed)});
                }
            }
            return worst;
        });

    add("route.hydrogen", "closed form = shift integral = <(E0-V)^2> = virial route, n <= 10", 1e-10, at_most,
        [&sys, points, kappa] {
            const auto moments = perturbation::hydrogen_moments(sys.hyd, points);
            const double beta = sys.hyd_d.beta();
            const double m = sys.hyd.mass;
            double worst = 0.0;
            for (int n = 1; n <= 10; ++n) {
                for (int l = 0; l < n; ++l) {
                    const auto qn = QuantumNumbers::principal(n, l);
                    const double e0 = hydrogen_energy(sys.hyd, n);
                    const double closed = hydrogen_spectrum(sys.hyd, sys.hyd_d, qn).shift;
                    const double integral = perturbation::hydrogen_shift_integral(sys.hyd, qn, sys.hyd_d, points) +
                                            kappa * beta * beta * m * m * e0 * e0 * e0;
                    const auto mom = moments({n, l, e0}, {n, l, e0});
                    const double diag = perturbation::diagonal_shift(e0, mom.v, mom.v2, beta, m);
                    const double virial = perturbation::power_law_shift(e0, mom.v2, -1.0, beta, m);
                    worst = std::max({worst, rel(integral, closed), rel(diag, closed), rel(virial, closed)});
                }
            }
            return worst;
        });

    add("structure.positivity", "every computed shift >= 0 (reports the most negative shift)", 0.0, at_most,
        [&sys, points] {
            double most_negative = 0.0;
            for (int shell = 0; shell <= 10; ++shell) {
                for (int l = shell % 2; l <= shell; l += 2) {
                    const auto qn = QuantumNumbers::radial((shell - l) / 2, l);
                    most_negative = std::min({most_negative, oscillator_spectrum(sys.osc, sys.osc_d, qn).shift,
                                              perturbation::oscillator_shift_integral(sys.osc, qn, sys.osc_d, points)});
                }
            }
            for (int n = 1; n <= 20; ++n) {
                for (int l = 0; l < n; ++l) {
                    const auto qn = QuantumNumbers::principal(n, l);
                    most_negative = std::min(most_negative, hydrogen_spectrum(sys.hyd, sys.hyd_d, qn).shift);
                }
            }
            return std::max(0.0, -most_negative);
        });

    auto block_sets = [&sys, points] {
        std::vector<perturbation::BlockAnalysis> sets;
        const auto h = PhysicalSystem::hydrogen(sys.hyd.mass, sys.hyd.alpha);
        const auto o = PhysicalSystem::oscillator(sys.osc.mass, sys.osc.omega);
        std::vector<perturbation::BlockState> hs;
        for (auto [n, l] : h.enumerate_levels(6, 20)) {
            hs.push_back({n, l, hydrogen_energy(sys.hyd, n)});
        }
        std::vector<perturbation::BlockState> os;
        for (auto [n, l] : o.enumerate_levels(8, 20)) {
            os.push_back({n, l, oscillator_energy(sys.osc, n, l)});
        }
        sets.push_back(perturbation::build_degenerate_blocks(hs, perturbation::hydrogen_moments(sys.hyd, points),
                                                             sys.hyd_d, sys.hyd.mass,
                                                             perturbation::analytic_degeneracy_tolerance));
        sets.push_back(perturbation::build_degenerate_blocks(os, perturbation::oscillator_moments(sys.osc, points),
                                                             sys.osc_d, sys.osc.mass,
                                                             perturbation::analytic_degeneracy_tolerance));
        return sets;
    };

    add("structure.m_independence", "shifts of one (n, l) identical across m (max |difference|)", 0.0, at_most,
        [&] {
            double worst = 0.0;
            for (const auto& set : block_sets()) {
                for (const auto& block : set.blocks) {
                    for (std::size_t i = 0; i < block.members.size(); ++i) {
                        for (std::size_t j = 0; j < block.members.size(); ++j) {
                            if (block.members[i].n == block.members[j].n && block.members[i].l == block.members[j].l) {
                                const auto ii = static_cast<Eigen::Index>(i);
                                const auto jj = static_cast<Eigen::Index>(j);
                                worst = std::max(worst, std::abs(block.matrix(ii, ii) - block.matrix(jj, jj)));
                            }
                        }
                    }
                }
            }
            return worst;
        });

    add("structure.block_matrices", "blocks symmetric and (l,m)-diagonal: max off-diagonal / diagonal scale", 1e-10,
        at_most, [&] {
            double worst = 0.0;
            for (const auto& set : block_sets()) {
                for (const auto& block : set.blocks) {
                    const double scale = block.matrix.diagonal().cwiseAbs().maxCoeff();
                    const Eigen::MatrixXd off =
                        block.matrix - Eigen::MatrixXd(block.matrix.diagonal().asDiagonal());
                    const double asym = (block.matrix - block.matrix.transpose()).cwiseAbs().maxCoeff();
                    worst = std::max({worst, off.cwiseAbs().maxCoeff() / scale, asym / scale});
                }
            }
            return worst;
        });

    add("degeneracy.accounting",
        "hydrogen shell n: g = n^2, f = n (n <= 6); oscillator shell N: f = floor(N/2)+1 (N <= 8); mismatches",
        0.0, at_most, [&] {
            const auto sets = block_sets();
            double mismatches = 0.0;
            const auto& hb = sets[0].blocks;
            if (hb.size() != 6) {
                mismatches += 1.0;
            }
            for (std::size_t i = 0; i < hb.size(); ++i) {
                const int n = static_cast<int>(i) + 1;
                mismatches += (hb[i].g() != n * n) + (hb[i].f() != n);
            }
            const auto& ob = sets[1].blocks;
            if (ob.size() != 9) {
                mismatches += 1.0;
            }
            for (std::size_t i = 0; i < ob.size(); ++i) {
                const int shell = static_cast<int>(i);
                mismatches += (ob[i].g() != (shell + 1) * (shell + 2) / 2) + (ob[i].f() != shell / 2 + 1);
            }
            return mismatches;
        });

    const double me = constants::electron_mass_ev;
    const double alpha = constants::fine_structure;
    add("numerov.hydrogen_e0", "Numerov E0 vs -m alpha^2/(2 n^2), n <= 5, all l (relative)", 1e-6, at_most,
        [me, alpha] {
            const auto h = PhysicalSystem::hydrogen(me, alpha);
            double worst = 0.0;
            for (auto [n, l] : h.enumerate_levels(5, 4)) {
                const auto s = solve_bound_state(h.potential(), me, n - l - 1, l, h.grid_for(n, l));
                worst = std::max(worst, rel(s.e0, -me * alpha * alpha / (2.0 * n * n)));
            }
            return worst;
        });

    add("numerov.oscillator_e0", "Numerov E0 vs omega(2n+l+3/2), 2n+l <= 6 (relative)", 1e-8, at_most, [me] {
        const auto o = PhysicalSystem::oscillator(me, 1.0);
        double worst = 0.0;
        for (auto [n, l] : o.enumerate_levels(6, 6)) {
            const auto s = solve_bound_state(o.potential(), me, n, l, o.grid_for(n, l));
            worst = std::max(worst, rel(s.e0, 2.0 * n + l + 1.5));
        }
        return worst;
    });

    add("numerov.convergence", "error reduction factor under step halving (hydrogen 1S, oscillator n=1 l=2)", 8.0,
        Comparison::AtLeast, [me, alpha] {
            double worst = std::numeric_limits<double>::infinity();
            const auto coul = CentralPotential::coulomb(alpha);
            const auto harm = CentralPotential::harmonic(me, 1.0);
            const double a0 = 1.0 / (me * alpha);
            const double b = 1.0 / std::sqrt(me * 1.0);
            struct Case {
                const CentralPotential* v;
                int n, l;
                double scale, exact;
            };
            for (const Case& c : {Case{&coul, 0, 0, a0, -0.5 * me * alpha * alpha}, Case{&harm, 1, 2, b, 5.5}}) {
                RadialGrid coarse{1e-6 * c.scale, 40.0 * c.scale, 600, Spacing::LogUniform};
                RadialGrid fine = coarse;
                fine.points = 2 * coarse.points - 1;
                const double e1 = std::abs(solve_bound_state(*c.v, me, c.n, c.l, coarse).e0 - c.exact);
                const double e2 = std::abs(solve_bound_state(*c.v, me, c.n, c.l, fine).e0 - c.exact);
                worst = std::min(worst, e1 / e2);
            }
            return worst;
        });

    add("numerov.orthogonality", "overlap of distinct same-l Numerov states on one grid", 1e-8, at_most, [me, alpha] {
        const auto coul = CentralPotential::coulomb(alpha);
        const auto grid = default_grid(coul, me, 3, 0);
        std::vector<RadialState> states;
        for (int n = 0; n <= 3; ++n) {
            states.push_back(solve_bound_state(coul, me, n, 0, grid));
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (std::size_t j = i + 1; j < states.size(); ++j) {
                worst = std::max(worst, std::abs(matrix_element(states[i], states[j], unit_observable())));
            }
        }
        return worst;
    });

    add("numerov.shift_route", "Numerov <(E0-V)^2> shift vs closed form (hydrogen n <= 3, oscillator 2n+l <= 4)",
        1e-6, at_most, [me, alpha] {
            const auto d = DeformationParams::from_delta_x0(units::length_to_natural(0.01));
            double worst = 0.0;
            const auto h = PhysicalSystem::hydrogen(me, alpha);
            for (auto [n, l] : h.enumerate_levels(3, 2)) {
                worst = std::max(worst, rel(numerical_level(h, d, n, l).level.shift, analytic_level(h, d, n, l).shift));
            }
            const auto o = PhysicalSystem::oscillator(me, 1.0);
            for (auto [n, l] : o.enumerate_levels(4, 4)) {
                worst = std::max(worst, rel(numerical_level(o, d, n, l).level.shift, analytic_level(o, d, n, l).shift));
            }
            return worst;
        });

    add("bounds.closure", "1S-2S shift difference at the bound equals the precision (relative)", 1e-12, at_most,
        [me, alpha] {
            const HydrogenSystem hyd(me, alpha);
            double worst = 0.0;
            for (double precision : {1e-12, units::frequency_to_energy(1.0), 3.7e-10}) {
                const bounds::TransitionBoundInput in{hyd, QuantumNumbers::principal(1, 0),
                                                      QuantumNumbers::principal(2, 0), precision};
                const double fm = bounds::transition_bound(in);
                const auto d = DeformationParams::from_delta_x0(units::length_to_natural(fm));
                const double diff = hydrogen_spectrum(hyd, d, in.level_a).shift -
                                    hydrogen_spectrum(hyd, d, in.level_b).shift;
                worst = std::max(worst, rel(std::abs(diff), precision));
            }
            return worst;
        });

    add("bounds.exchange_symmetry", "bound unchanged when the two levels swap (absolute fm)", 0.0, at_most,
        [me, alpha] {
            const HydrogenSystem hyd(me, alpha);
            const auto a = QuantumNumbers::principal(1, 0);
            const auto b = QuantumNumbers::principal(2, 0);
            return std::abs(bounds::transition_bound({hyd, a, b, 1e-12}) - bounds::transition_bound({hyd, b, a, 1e-12}));
        });

    return out;
}

bool all_passed(const std::vector<CheckResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

} // namespace minlen::validation
