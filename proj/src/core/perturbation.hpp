#pragma once

#include "analytic.hpp"

#include <Eigen/Core>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace minlen::perturbation {

inline constexpr int default_quadrature_points = 64;

/// 4 beta m [ E0_a^2 delta_ab - (E0_a + E0_b) <a|V|b> + <a|V^2|b> ] for two
/// states sharing (l, m).
double shift_matrix_element(double e0_a, double e0_b, double v_ab, double v2_ab, double beta, double mass,
                            bool same_n);

/// First-order shift of a nondegenerate (or already diagonal) level:
/// 4 beta m [E0^2 - 2 E0 <V> + <V^2>] = 4 beta m <(E0 - V)^2>.
double diagonal_shift(double e0, double v, double v2, double beta, double mass);

/// Same shift with <V> eliminated by the virial theorem for V ~ r^p:
/// 4 beta m [E0^2 (p - 2)/(p + 2) + <V^2>]. Throws DomainError for p = -2.
double power_law_shift(double e0, double v2, double p, double beta, double mass);

/// Oscillator shift from the reduced Laguerre integral
/// integral x^{l+5/2} e^{-x} [L_n^{l+1/2}(x)]^2 dx.
double oscillator_shift_integral(const OscillatorSystem& sys, const QuantumNumbers& qn, const DeformationParams& d,
                                 int points = default_quadrature_points);

/// Hydrogen shift from the reduced Laguerre integral
/// integral x^{2l} e^{-x} [L_{n-l-1}^{2l+1}(x)]^2 dx.
double hydrogen_shift_integral(const HydrogenSystem& sys, const QuantumNumbers& qn, const DeformationParams& d,
                               int points = default_quadrature_points);

/// One unperturbed level (n, l) entering a block; m is expanded by the block builder.
struct BlockState {
    int n = 0;
    int l = 0;
    double e0 = 0.0;
};

struct Moments {
    double v = 0.0;  // <a|V|b>
    double v2 = 0.0; // <a|V^2|b>
};

/// Radial matrix elements between two levels of equal l.
using MomentSource = std::function<Moments(const BlockState&, const BlockState&)>;

struct BlockMember {
    int n = 0;
    int l = 0;
    int m = 0;
};

struct DistinctShift {
    double value = 0.0;
    int count = 0;
};

struct DegenerateBlock {
    double e0 = 0.0;
    std::vector<BlockMember> members;
    Eigen::MatrixXd matrix;
    std::vector<double> shifts; // eigenvalues, ascending
    std::vector<DistinctShift> distinct;

    int g() const { return static_cast<int>(members.size()); }
    int f() const { return static_cast<int>(distinct.size()); }
};

/// Raised when two levels fall inside the degeneracy tolerance while being
/// clearly distinguishable at a tighter one.
struct ToleranceWarning {
    double e0_a = 0.0;
    double e0_b = 0.0;
    std::string message;
};

struct BlockAnalysis {
    std::vector<DegenerateBlock> blocks;
    std::vector<ToleranceWarning> warnings;
};

inline constexpr double analytic_degeneracy_tolerance = 1e-9;
inline constexpr double numerical_degeneracy_tolerance = 1e-6;
inline constexpr double distinct_shift_tolerance = 1e-9;

/// Groups levels whose E0 agree to `relative_tolerance`, expands each (n, l)
/// into its 2l+1 m-states, assembles the g x g perturbation matrix and
/// diagonalizes it. Blocks ordered by E0; members by (l, n, m).
BlockAnalysis build_degenerate_blocks(std::span<const BlockState> levels, const MomentSource& moments,
                                      const DeformationParams& d, double mass, double relative_tolerance);

/// Moment sources built on the closed-form wavefunctions.
MomentSource oscillator_moments(const OscillatorSystem& sys, int points = default_quadrature_points);
MomentSource hydrogen_moments(const HydrogenSystem& sys, int points = default_quadrature_points);

} // namespace minlen::perturbation
