#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace minlen {

/// Central potential V(r) in eV with r in eV^-1.
class CentralPotential {
public:
    struct PowerLaw {
        double coefficient;
        double exponent;
    };
    struct Coulomb {
        double alpha;
    };
    struct Tabulated {
        std::vector<double> radii;  // eV^-1, strictly increasing
        std::vector<double> values; // eV
        std::vector<double> slopes; // monotone cubic (PCHIP) derivatives
    };

    /// V = coefficient * r^exponent. Requires exponent > -2 and a binding sign.
    static CentralPotential power_law(double coefficient, double exponent);
    /// V = -alpha / r.
    static CentralPotential coulomb(double alpha);
    /// V = k r^2 with k = m omega^2 / 2.
    static CentralPotential harmonic(double mass, double omega);
    /// Monotone cubic interpolation inside the table; power-law extrapolation outside.
    static CentralPotential tabulated(std::vector<double> radii, std::vector<double> values);

    double operator()(double r) const;

    /// Exponent p for pure power laws (Coulomb reports -1); empty for tables.
    std::optional<double> power_exponent() const;
    /// Behaviour V ~ r^q as r -> 0, used for integrability checks.
    double origin_exponent() const;
    /// True when bound states must lie below a finite threshold V(inf).
    bool has_threshold() const;

    const auto& kind() const { return kind_; }

private:
    using Kind = std::variant<PowerLaw, Coulomb, Tabulated>;
    explicit CentralPotential(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

/// Reads `r_fm  V_eV` rows ('#' starts a comment). Radii are converted to eV^-1.
CentralPotential read_tabulated_potential(std::istream& in);
CentralPotential load_tabulated_potential(const std::string& path);

enum class Spacing { Uniform, LogUniform };

struct RadialGrid {
    double r_min = 0.0;
    double r_max = 0.0;
    int points = 4000;
    Spacing spacing = Spacing::LogUniform;

    void validate() const;
    std::vector<double> radii() const;
    /// Step in the integration variable (r for Uniform, ln r for LogUniform).
    double step() const;
};

inline constexpr int min_grid_points = 500;

/// Natural length scale used by default_grid: 1/gamma_n for Coulomb, 1/lambda
/// for the harmonic well, (m|c|)^{-1/(p+2)} for other power laws.
double natural_length_scale(const CentralPotential& v, double mass, int n, int l);

/// LogUniform grid over [1e-6 L, 40 L] with 4000 points, L = natural_length_scale
/// (or `length_scale` when given). r_max grows for highly excited Coulomb-like states.
RadialGrid default_grid(const CentralPotential& v, double mass, int n, int l,
                        std::optional<double> length_scale = std::nullopt);

struct RadialState {
    int n = 0; // radial nodes
    int l = 0;
    double e0 = 0.0;
    RadialGrid grid;
    std::vector<double> radii;
    std::vector<double> u; // reduced radial wavefunction, integral u^2 dr = 1
    double norm_residual = 0.0;
    int nodes = 0;
    int iterations = 0;
    /// |u| at the last interior point relative to max |u|.
    double tail_ratio = 0.0;
    /// Smallest local de Broglie wavelength over grid spacing in the allowed region.
    double points_per_wavelength = 0.0;
};

struct SolverOptions {
    int max_iterations = 200;
};

/// Numerov shooting for u'' = [2m(V - E) + l(l+1)/r^2] u with n interior nodes.
/// Throws NoBoundStateError when the window holds no such state and
/// NumericalError on non-convergence.
RadialState solve_bound_state(const CentralPotential& v, double mass, int n, int l, const RadialGrid& grid,
                              const SolverOptions& options = {});

/// Radial observable f(r) behaving like r^origin_exponent as r -> 0.
struct RadialObservable {
    std::function<double(double)> f;
    double origin_exponent = 0.0;
};

RadialObservable unit_observable();
RadialObservable potential_observable(const CentralPotential& v);
RadialObservable potential_squared_observable(const CentralPotential& v);

/// integral u^2 f dr on the state's grid. Throws DomainError if u^2 f is not
/// integrable at the origin.
double expectation(const RadialState& state, const RadialObservable& f);

/// integral u_a u_b f dr; the two states must share a grid.
double matrix_element(const RadialState& a, const RadialState& b, const RadialObservable& f);

/// Composite Simpson weights for integral g(r) dr over the grid samples.
std::vector<double> integration_weights(const RadialGrid& grid, const std::vector<double>& radii);

} // namespace minlen
