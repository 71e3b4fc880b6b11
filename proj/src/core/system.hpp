#pragma once

#include "analytic.hpp"
#include "perturbation.hpp"
#include "radial_solver.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace minlen {

enum class SystemKind { Hydrogen, Oscillator, Tabulated };
enum class Method { Analytic, Numerical };

/// A bound-state problem the spectrum commands can enumerate: one of the two
/// closed-form systems or a tabulated potential (numerical route only).
class PhysicalSystem {
public:
    static PhysicalSystem hydrogen(double mass_ev, double alpha);
    static PhysicalSystem oscillator(double mass_ev, double omega_ev);
    static PhysicalSystem tabulated(CentralPotential potential, double mass_ev,
                                    std::optional<double> length_scale = std::nullopt);

    SystemKind kind() const { return kind_; }
    double mass() const { return mass_; }
    Convention convention() const;
    bool has_closed_form() const { return kind_ != SystemKind::Tabulated; }
    const CentralPotential& potential() const { return potential_; }

    const HydrogenSystem& hydrogen_params() const;
    const OscillatorSystem& oscillator_params() const;

    /// Levels (n, l) up to n_max, in the system's n convention:
    /// hydrogen principal n <= n_max; oscillator shells 2n + l <= n_max;
    /// tabulated radial n <= n_max. Always l <= l_max.
    std::vector<std::pair<int, int>> enumerate_levels(int n_max, int l_max) const;

    int radial_nodes(int n, int l) const;
    QuantumNumbers quantum_numbers(int n, int l) const;
    RadialGrid grid_for(int n, int l) const;

private:
    SystemKind kind_ = SystemKind::Hydrogen;
    double mass_ = 0.0;
    std::optional<HydrogenSystem> hydrogen_;
    std::optional<OscillatorSystem> oscillator_;
    CentralPotential potential_ = CentralPotential::coulomb(1.0);
    std::optional<double> length_scale_;
};

CorrectedLevel analytic_level(const PhysicalSystem& sys, const DeformationParams& d, int n, int l);

struct NumericalLevel {
    CorrectedLevel level;
    RadialState state;
    double v = 0.0;
    double v2 = 0.0;
};

/// Numerov E0 and the shift 4 beta m <(E0 - V)^2> from grid moments.
NumericalLevel numerical_level(const PhysicalSystem& sys, const DeformationParams& d, int n, int l);

struct SpectrumRow {
    CorrectedLevel level;
    Method method = Method::Analytic;
    /// Set on numerical rows when the analytic route ran too.
    std::optional<double> e0_rel_discrepancy;
    std::optional<double> shift_rel_discrepancy;
};

struct MethodSelection {
    bool analytic = true;
    bool numerical = false;
};

/// Rows sorted by (E0, l, n), analytic before numerical.
std::vector<SpectrumRow> compute_spectrum(const PhysicalSystem& sys, const DeformationParams& d, int n_max, int l_max,
                                          MethodSelection methods);

perturbation::BlockAnalysis compute_blocks(const PhysicalSystem& sys, const DeformationParams& d, int n_max, int l_max,
                                           Method method);

inline constexpr int max_n = 50;
inline constexpr int max_l = 20;

} // namespace minlen
