#include "radial_solver.hpp"

#include "constants.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace minlen {

namespace {

constexpr double rescale_threshold = 1e150;
constexpr double max_forbidden_step = 0.5;

double pchip_endpoint_slope(double h0, double h1, double d0, double d1)
{
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) {
        s = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3.0 * d0)) {
        s = 3.0 * d0;
    }
    return s;
}

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    std::vector<double> slopes(n, 0.0);
    if (n == 2) {
        slopes[0] = slopes[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return slopes;
    }
    std::vector<double> h(n - 1);
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            slopes[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slopes[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    slopes[0] = pchip_endpoint_slope(h[0], h[1], delta[0], delta[1]);
    slopes[n - 1] = pchip_endpoint_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return slopes;
}

// Power-law continuation through (r0, v0), (r1, v1); linear when the two
// values do not share a sign.
double extrapolate(double r, double r0, double v0, double r1, double v1)
{
    if (v0 != 0.0 && v1 != 0.0 && (v0 > 0.0) == (v1 > 0.0)) {
        const double slope = std::log(v1 / v0) / std::log(r1 / r0);
        return v0 * std::pow(r / r0, slope);
    }
    return v0 + (v1 - v0) / (r1 - r0) * (r - r0);
}

double tabulated_value(const CentralPotential::Tabulated& t, double r)
{
    const auto& x = t.radii;
    const auto& y = t.values;
    const std::size_t n = x.size();
    if (r <= x.front()) {
        return extrapolate(r, x[0], y[0], x[1], y[1]);
    }
    if (r >= x.back()) {
        return extrapolate(r, x[n - 1], y[n - 1], x[n - 2], y[n - 2]);
    }
    const auto it = std::upper_bound(x.begin(), x.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double h = x[i + 1] - x[i];
    const double s = (r - x[i]) / h;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * y[i] + h10 * h * t.slopes[i] + h01 * y[i + 1] + h11 * h * t.slopes[i + 1];
}

} // namespace

CentralPotential CentralPotential::power_law(double coefficient, double exponent)
{
    if (!(exponent > -2.0)) {
        throw DomainError("power-law exponent must exceed -2 for bound states");
    }
    if (exponent == 0.0 || coefficient == 0.0) {
        throw DomainError("power-law potential needs non-zero coefficient and exponent");
    }
    if ((exponent > 0.0) != (coefficient > 0.0)) {
        throw DomainError("power-law coefficient sign does not bind (need c > 0 for p > 0, c < 0 for p < 0)");
    }
    return CentralPotential(PowerLaw{coefficient, exponent});
}

CentralPotential CentralPotential::coulomb(double alpha)
{
    if (!(alpha > 0.0)) {
        throw DomainError("Coulomb coupling must be positive");
    }
    return CentralPotential(Coulomb{alpha});
}

CentralPotential CentralPotential::harmonic(double mass, double omega)
{
    if (!(mass > 0.0) || !(omega > 0.0)) {
        throw DomainError("harmonic well needs mass > 0 and omega > 0");
    }
    return power_law(0.5 * mass * omega * omega, 2.0);
}

CentralPotential CentralPotential::tabulated(std::vector<double> radii, std::vector<double> values)
{
    if (radii.size() != values.size()) {
        throw UsageError("tabulated potential: radius and value columns differ in length");
    }
    if (radii.size() < 3) {
        throw UsageError("tabulated potential needs at least 3 rows");
    }
    if (!(radii.front() > 0.0)) {
        throw UsageError("tabulated potential radii must be positive");
    }
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (!(radii[i] > radii[i - 1])) {
            throw UsageError("tabulated potential radii must be strictly increasing (row " + std::to_string(i + 1) +
                             ")");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw UsageError("tabulated potential contains a non-finite value");
        }
    }
    auto slopes = pchip_slopes(radii, values);
    return CentralPotential(Tabulated{std::move(radii), std::move(values), std::move(slopes)});
}

double CentralPotential::operator()(double r) const
{
    return std::visit(
        [r](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, PowerLaw>) {
                return k.exponent == 2.0 ? k.coefficient * r * r : k.coefficient * std::pow(r, k.exponent);
            } else if constexpr (std::is_same_v<K, Coulomb>) {
                return -k.alpha / r;
            } else {
                return tabulated_value(k, r);
            }
        },
        kind_);
}

std::optional<double> CentralPotential::power_exponent() const
{
    if (const auto* p = std::get_if<PowerLaw>(&kind_)) {
        return p->exponent;
    }
    if (std::holds_alternative<Coulomb>(kind_)) {
        return -1.0;
    }
    return std::nullopt;
}

double CentralPotential::origin_exponent() const
{
    if (auto p = power_exponent()) {
        return *p;
    }
    const auto& t = std::get<Tabulated>(kind_);
    const double v0 = t.values[0];
    const double v1 = t.values[1];
    if (v0 != 0.0 && v1 != 0.0 && (v0 > 0.0) == (v1 > 0.0)) {
        return std::min(0.0, std::log(v1 / v0) / std::log(t.radii[1] / t.radii[0]));
    }
    return 0.0;
}

bool CentralPotential::has_threshold() const
{
    if (auto p = power_exponent()) {
        return *p < 0.0;
    }
    return true;
}

CentralPotential read_tabulated_potential(std::istream& in)
{
    std::vector<double> radii;
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        double r_fm = 0.0;
        double v_ev = 0.0;
        if (!(fields >> r_fm)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            throw UsageError("potential file line " + std::to_string(line_no) + ": expected `r_fm V_eV`");
        }
        if (!(fields >> v_ev)) {
            throw UsageError("potential file line " + std::to_string(line_no) + ": missing V_eV column");
        }
        std::string extra;
        if (fields >> extra) {
            throw UsageError("potential file line " + std::to_string(line_no) + ": unexpected third column");
        }
        if (!(r_fm > 0.0)) {
            throw UsageError("potential file line " + std::to_string(line_no) + ": radius must be positive");
        }
        radii.push_back(r_fm / constants::hbar_c_ev_fm);
        values.push_back(v_ev);
    }
    return CentralPotential::tabulated(std::move(radii), std::move(values));
}

CentralPotential load_tabulated_potential(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open potential file: " + path);
    }
    return read_tabulated_potential(in);
}

void RadialGrid::validate() const
{
    if (!(r_min > 0.0) || !(r_max > r_min)) {
        throw UsageError("radial grid needs 0 < r_min < r_max");
    }
    if (points < min_grid_points) {
        throw UsageError("radial grid needs at least 500 points");
    }
}

double RadialGrid::step() const
{
    return spacing == Spacing::LogUniform ? std::log(r_max / r_min) / (points - 1) : (r_max - r_min) / (points - 1);
}

std::vector<double> RadialGrid::radii() const
{
    validate();
    std::vector<double> r(static_cast<std::size_t>(points));
    const double h = step();
    for (int i = 0; i < points; ++i) {
        r[static_cast<std::size_t>(i)] =
            spacing == Spacing::LogUniform ? r_min * std::exp(h * i) : r_min + h * i;
    }
    r.back() = r_max;
    return r;
}

double natural_length_scale(const CentralPotential& v, double mass, int n, int l)
{
    if (!(mass > 0.0)) {
        throw DomainError("mass must be positive");
    }
    const int principal_like = n + l + 1;
    if (const auto* c = std::get_if<CentralPotential::Coulomb>(&v.kind())) {
        return principal_like / (mass * c->alpha);
    }
    if (const auto* p = std::get_if<CentralPotential::PowerLaw>(&v.kind())) {
        if (p->exponent == 2.0) {
            return std::pow(2.0 * mass * p->coefficient, -0.25); // 1/lambda
        }
        const double base = std::pow(mass * std::abs(p->coefficient), -1.0 / (p->exponent + 2.0));
        return p->exponent < 0.0 ? principal_like * base : base;
    }
    const auto& t = std::get<CentralPotential::Tabulated>(v.kind());
    return t.radii.back() / 40.0;
}

RadialGrid default_grid(const CentralPotential& v, double mass, int n, int l, std::optional<double> length_scale)
{
    const double scale = length_scale ? *length_scale : natural_length_scale(v, mass, n, l);
    if (!(scale > 0.0)) {
        throw DomainError("length scale must be positive");
    }
    double extent = 40.0;
    if (v.has_threshold() && v.power_exponent()) {
        // outer turning point sits near 2 n_principal natural lengths
        extent = std::max(40.0, 2.0 * (n + l + 1) + 20.0);
    }
    return RadialGrid{1e-6 * scale, extent * scale, 4000, Spacing::LogUniform};
}

namespace {

// Numerov in the integration variable s: y'' = Q(s) y. For LogUniform s = ln r
// and y = u / sqrt(r), so Q = r^2 2m (V - E) + (l + 1/2)^2; for Uniform s = r,
// y = u and Q = 2m(V - E) + l(l+1)/r^2. Q = base + slope * E.
class NumerovProblem {
public:
    NumerovProblem(const CentralPotential& v, double mass, int l, const RadialGrid& grid)
        : mass_(mass), l_(l), grid_(grid), radii_(grid.radii()), h2_12_(grid.step() * grid.step() / 12.0)
    {
        const std::size_t n = radii_.size();
        base_.resize(n);
        slope_.resize(n);
        potential_.resize(n);
        effective_.resize(n);
        const double ll1 = static_cast<double>(l) * (l + 1);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = radii_[i];
            const double vr = v(r);
            potential_[i] = vr;
            effective_[i] = vr + ll1 / (2.0 * mass * r * r);
            if (grid.spacing == Spacing::LogUniform) {
                base_[i] = r * r * 2.0 * mass * vr + (l + 0.5) * (l + 0.5);
                slope_[i] = -2.0 * mass * r * r;
            } else {
                base_[i] = 2.0 * mass * vr + ll1 / (r * r);
                slope_[i] = -2.0 * mass;
            }
        }
        start_ratio_ = grid.spacing == Spacing::LogUniform ? std::exp(-(l + 0.5) * grid.step())
                                                           : std::pow(radii_[0] / radii_[1], l + 1.0);
    }

    std::size_t size() const { return radii_.size(); }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& effective() const { return effective_; }
    const std::vector<double>& potential() const { return potential_; }

    double f(std::size_t i, double e) const { return 1.0 - h2_12_ * (base_[i] + slope_[i] * e); }

    // Sign changes of the outward solution over the whole grid.
    int count_outward_nodes(double e) const
    {
        const std::size_t n = stable_end(e) + 1;
        if (n < 3) {
            return 0;
        }
        double y_prev = start_ratio_;
        double y = 1.0;
        double f_prev = f(0, e);
        double f_cur = f(1, e);
        int nodes = 0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double f_next = f(i + 1, e);
            double y_next = ((12.0 - 10.0 * f_cur) * y - f_prev * y_prev) / f_next;
            if ((y_next < 0.0 && y > 0.0) || (y_next > 0.0 && y < 0.0) || (y == 0.0 && y_next * y_prev < 0.0)) {
                ++nodes;
            }
            if (std::abs(y_next) > rescale_threshold) {
                y_next /= rescale_threshold;
                y /= rescale_threshold;
            }
            y_prev = y;
            y = y_next;
            f_prev = f_cur;
            f_cur = f_next;
        }
        return nodes;
    }

    // Last index where E exceeds the effective potential.
    std::size_t outer_turning_point(double e) const
    {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            if (e > effective_[i]) {
                idx = i;
            }
        }
        return idx;
    }

    // Numerov loses stability once h^2 Q / 12 approaches 1 (f <= 0 flips signs).
    // Beyond the turning point that only happens deep in the forbidden region,
    // where the bound state is negligible, so the problem is cut off there with
    // u = 0.
    std::size_t stable_end(double e) const
    {
        for (std::size_t i = outer_turning_point(e) + 1; i < size(); ++i) {
            if (h2_12_ * (base_[i] + slope_[i] * e) > max_forbidden_step) {
                return i;
            }
        }
        return size() - 1;
    }

    struct Matched {
        std::vector<double> y;
        double mismatch = 0.0; // (y_out - y_in)/y at match + 1
        int nodes = 0;
    };

    // Outward to match+1, inward from the last point (y = 0) to match, scaled
    // to agree at match.
    Matched integrate_matched(double e, std::size_t match, std::size_t end) const
    {
        const std::size_t n = end + 1;
        std::vector<double> out(match + 2);
        out[0] = start_ratio_;
        out[1] = 1.0;
        for (std::size_t i = 1; i <= match; ++i) {
            out[i + 1] = ((12.0 - 10.0 * f(i, e)) * out[i] - f(i - 1, e) * out[i - 1]) / f(i + 1, e);
            if (std::abs(out[i + 1]) > rescale_threshold) {
                for (std::size_t j = 0; j <= i + 1; ++j) {
                    out[j] /= rescale_threshold;
                }
            }
        }
        std::vector<double> in(n, 0.0);
        in[n - 1] = 0.0;
        in[n - 2] = 1.0;
        for (std::size_t i = n - 2; i > match; --i) {
            in[i - 1] = ((12.0 - 10.0 * f(i, e)) * in[i] - f(i + 1, e) * in[i + 1]) / f(i - 1, e);
            if (std::abs(in[i - 1]) > rescale_threshold) {
                for (std::size_t j = i - 1; j < n; ++j) {
                    in[j] /= rescale_threshold;
                }
            }
        }
        Matched result;
        result.y.assign(size(), 0.0);
        const double scale = out[match] / in[match];
        for (std::size_t i = 0; i <= match; ++i) {
            result.y[i] = out[i];
        }
        for (std::size_t i = match + 1; i < n; ++i) {
            result.y[i] = in[i] * scale;
        }
        result.mismatch = (out[match + 1] - in[match + 1] * scale) / out[match];
        if (!std::isfinite(scale) || out[match] == 0.0) {
            result.mismatch = std::numeric_limits<double>::quiet_NaN();
        }
        result.nodes = count_sign_changes(result.y);
        return result;
    }

    static int count_sign_changes(const std::vector<double>& y)
    {
        int nodes = 0;
        int last_sign = 0;
        for (double v : y) {
            const int s = (v > 0.0) - (v < 0.0);
            if (s != 0) {
                if (last_sign != 0 && s != last_sign) {
                    ++nodes;
                }
                last_sign = s;
            }
        }
        return nodes;
    }

private:
    double mass_;
    int l_;
    RadialGrid grid_;
    std::vector<double> radii_;
    double h2_12_;
    std::vector<double> base_;
    std::vector<double> slope_;
    std::vector<double> potential_;
    std::vector<double> effective_;
    double start_ratio_ = 0.0;
};

double energy_scale(const CentralPotential& v, double mass, const RadialGrid& grid)
{
    if (const auto* p = std::get_if<CentralPotential::PowerLaw>(&v.kind())) {
        const double length = std::pow(mass * std::abs(p->coefficient), -1.0 / (p->exponent + 2.0));
        return std::abs(p->coefficient) * std::pow(length, p->exponent);
    }
    const double length = grid.r_max / 40.0;
    return 1.0 / (mass * length * length);
}

} // namespace

RadialState solve_bound_state(const CentralPotential& v, double mass, int n, int l, const RadialGrid& grid,
                              const SolverOptions& options)
{
    if (!(mass > 0.0)) {
        throw DomainError("mass must be positive");
    }
    if (n < 0 || l < 0) {
        throw UsageError("radial quantum number and l must be non-negative");
    }
    grid.validate();
    const NumerovProblem problem(v, mass, l, grid);

    const auto& eff = problem.effective();
    const double v_min = *std::min_element(eff.begin(), eff.end());
    double lo = v_min < 0.0 ? 1.001 * v_min : v_min - 1e-3 * std::abs(v_min) - 1e-300;
    double hi = 0.0;
    int iterations = 0;

    if (v.has_threshold()) {
        hi = v.power_exponent() ? 0.0 : problem.potential().back();
        if (problem.count_outward_nodes(hi) <= n) {
            std::ostringstream msg;
            msg << "no bound state with n=" << n << ", l=" << l << " below threshold " << hi
                << " eV on grid [" << grid.r_min << ", " << grid.r_max << "] eV^-1";
            throw NoBoundStateError(msg.str());
        }
    } else {
        const double width = 50.0 * energy_scale(v, mass, grid);
        hi = std::max(v_min, 0.0) + width;
        int widenings = 0;
        while (problem.count_outward_nodes(hi) <= n) {
            if (++widenings > 10) {
                std::ostringstream msg;
                msg << "could not bracket n=" << n << ", l=" << l << " below " << hi << " eV after 10 widenings";
                throw NoBoundStateError(msg.str());
            }
            hi = lo + 2.0 * (hi - lo);
        }
    }

    // Bisect on node count until exactly one eigenvalue lies in (lo, hi].
    int nodes_lo = problem.count_outward_nodes(lo);
    int nodes_hi = problem.count_outward_nodes(hi);
    if (nodes_lo > n) {
        throw NoBoundStateError("energy window lower edge already exceeds the requested node count");
    }
    while (!(nodes_lo == n && nodes_hi == n + 1)) {
        if (++iterations > options.max_iterations) {
            std::ostringstream msg;
            msg << "node-count bisection did not isolate n=" << n << ", l=" << l << " after "
                << options.max_iterations << " iterations; bracket [" << lo << ", " << hi << "] with node counts "
                << nodes_lo << ", " << nodes_hi;
            throw NumericalError(msg.str());
        }
        const double mid = 0.5 * (lo + hi);
        const int nodes_mid = problem.count_outward_nodes(mid);
        if (nodes_mid <= n) {
            lo = mid;
            nodes_lo = nodes_mid;
        } else {
            hi = mid;
            nodes_hi = nodes_mid;
        }
    }

    // Refine on the matched mismatch, which decreases through zero at the eigenvalue
    // inside the region where the matched solution carries n nodes.
    const double e_mid = 0.5 * (lo + hi);
    const std::size_t last = problem.stable_end(e_mid);
    if (last < 8) {
        throw NumericalError("grid resolves fewer than 8 points before the forbidden-region cutoff");
    }
    const std::size_t match = std::clamp<std::size_t>(problem.outer_turning_point(e_mid), 2, last - 3);
    bool have_lo = false;
    bool have_hi = false;
    double f_lo = 0.0;
    double f_hi = 0.0;
    int side = 0; // Illinois bookkeeping
    double e = 0.5 * (lo + hi);
    NumerovProblem::Matched best;
    for (;;) {
        if (++iterations > options.max_iterations) {
            std::ostringstream msg;
            msg << "eigenvalue refinement for n=" << n << ", l=" << l << " did not converge after "
                << options.max_iterations << " iterations; bracket [" << lo << ", " << hi
                << "], last mismatch " << best.mismatch;
            throw NumericalError(msg.str());
        }
        best = problem.integrate_matched(e, match, last);
        const bool counted = best.nodes == n && std::isfinite(best.mismatch);
        if (best.nodes < n || (counted && best.mismatch > 0.0)) {
            lo = e;
            have_lo = counted;
            f_lo = best.mismatch;
            if (side == -1 && have_hi) {
                f_hi *= 0.5;
            }
            side = -1;
        } else if (best.nodes > n || (counted && best.mismatch < 0.0)) {
            hi = e;
            have_hi = counted;
            f_hi = best.mismatch;
            if (side == 1 && have_lo) {
                f_lo *= 0.5;
            }
            side = 1;
        } else if (counted && best.mismatch == 0.0) {
            break;
        } else if (problem.count_outward_nodes(e) <= n) {
            // mismatch undefined: matching point landed on a node
            lo = e;
            have_lo = false;
        } else {
            hi = e;
            have_hi = false;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) {
            if (best.nodes != n) {
                best = problem.integrate_matched(have_lo ? lo : hi, match, last);
            }
            break;
        }
        double next = 0.5 * (lo + hi);
        if (have_lo && have_hi && f_lo > 0.0 && f_hi < 0.0) {
            next = lo + (hi - lo) * f_lo / (f_lo - f_hi);
            if (!(next > lo && next < hi)) {
                next = 0.5 * (lo + hi);
            }
        }
        if (next == e) {
            break;
        }
        e = next;
    }

    if (best.nodes != n) {
        std::ostringstream msg;
        msg << "converged state for n=" << n << ", l=" << l << " carries " << best.nodes << " nodes (E=" << e << ")";
        throw NumericalError(msg.str());
    }

    RadialState state;
    state.n = n;
    state.l = l;
    state.e0 = e;
    state.grid = grid;
    state.radii = problem.radii();
    state.iterations = iterations;
    state.u = std::move(best.y);
    if (grid.spacing == Spacing::LogUniform) {
        for (std::size_t i = 0; i < state.u.size(); ++i) {
            state.u[i] *= std::sqrt(state.radii[i]);
        }
    }
    const auto weights = integration_weights(grid, state.radii);
    double norm = 0.0;
    for (std::size_t i = 0; i < state.u.size(); ++i) {
        norm += weights[i] * state.u[i] * state.u[i];
    }
    const double inv = 1.0 / std::sqrt(norm);
    double peak = 0.0;
    double check = 0.0;
    for (std::size_t i = 0; i < state.u.size(); ++i) {
        state.u[i] *= inv;
        peak = std::max(peak, std::abs(state.u[i]));
        check += weights[i] * state.u[i] * state.u[i];
    }
    state.norm_residual = std::abs(check - 1.0);
    state.nodes = NumerovProblem::count_sign_changes(state.u);
    state.tail_ratio = std::abs(state.u[state.u.size() - 2]) / peak;

    double ppw = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < state.radii.size(); ++i) {
        const double ke = e - eff[i];
        if (ke > 0.0) {
            const double wavelength = 2.0 * constants::pi / std::sqrt(2.0 * mass * ke);
            ppw = std::min(ppw, wavelength / (state.radii[i + 1] - state.radii[i]));
        }
    }
    state.points_per_wavelength = ppw;
    return state;
}

RadialObservable unit_observable()
{
    return {[](double) { return 1.0; }, 0.0};
}

RadialObservable potential_observable(const CentralPotential& v)
{
    return {[v](double r) { return v(r); }, v.origin_exponent()};
}

RadialObservable potential_squared_observable(const CentralPotential& v)
{
    return {[v](double r) {
                const double x = v(r);
                return x * x;
            },
            2.0 * v.origin_exponent()};
}

std::vector<double> integration_weights(const RadialGrid& grid, const std::vector<double>& radii)
{
    const std::size_t n = radii.size();
    const double h = grid.step();
    std::vector<double> w(n, 0.0);
    const std::size_t intervals = n - 1;
    std::size_t simpson_end = intervals % 2 == 0 ? n - 1 : n - 4; // last index covered by Simpson
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (intervals % 2 != 0) {
        // Simpson 3/8 on the last three intervals
        w[n - 4] += 3.0 * h / 8.0;
        w[n - 3] += 9.0 * h / 8.0;
        w[n - 2] += 9.0 * h / 8.0;
        w[n - 1] += 3.0 * h / 8.0;
    }
    if (grid.spacing == Spacing::LogUniform) {
        for (std::size_t i = 0; i < n; ++i) {
            w[i] *= radii[i]; // dr = r d(ln r)
        }
    }
    return w;
}

double matrix_element(const RadialState& a, const RadialState& b, const RadialObservable& f)
{
    if (a.radii.size() != b.radii.size() || a.grid.r_min != b.grid.r_min || a.grid.r_max != b.grid.r_max ||
        a.grid.spacing != b.grid.spacing) {
        throw UsageError("matrix element requires both states on the same grid");
    }
    // u_a u_b f ~ r^s near the origin
    const double s = a.l + b.l + 2.0 + f.origin_exponent;
    if (!(s > -1.0)) {
        throw DomainError("observable too singular at the origin for l=" + std::to_string(std::min(a.l, b.l)) +
                          " (u^2 f ~ r^" + std::to_string(s) + ")");
    }
    const auto weights = integration_weights(a.grid, a.radii);
    // (0, r_min) piece from the power-law behaviour
    const double r0 = a.radii.front();
    double acc = a.u.front() * b.u.front() * f.f(r0) * r0 / (s + 1.0);
    for (std::size_t i = 0; i < a.radii.size(); ++i) {
        acc += weights[i] * a.u[i] * b.u[i] * f.f(a.radii[i]);
    }
    return acc;
}

double expectation(const RadialState& state, const RadialObservable& f) { return matrix_element(state, state, f); }

} // namespace minlen
