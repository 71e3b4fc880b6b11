#pragma once

#include <span>
#include <vector>

namespace minlen {

/// Deformation strength beta (eV^-2) of the minimal extension beta' = 2 beta,
/// with minimal length delta_x0 = sqrt(5 beta) (eV^-1).
class DeformationParams {
public:
    DeformationParams() = default;

    static DeformationParams from_beta(double beta);
    static DeformationParams from_delta_x0(double delta_x0_natural);

    double beta() const { return beta_; }
    double beta_prime() const { return 2.0 * beta_; }
    double delta_x0() const;
    /// (delta_x0)^2 = 5 beta, without the round trip through sqrt.
    double delta_x0_squared() const { return 5.0 * beta_; }

private:
    explicit DeformationParams(double beta) : beta_(beta) {}
    double beta_ = 0.0;
};

enum class Convention { RadialN, PrincipalN };

/// (n, l, m). For RadialN, n counts radial nodes; for PrincipalN (hydrogen),
/// n = nodes + l + 1.
struct QuantumNumbers {
    int n = 0;
    int l = 0;
    int m = 0;
    Convention convention = Convention::RadialN;

    static QuantumNumbers radial(int n, int l, int m = 0) { return {n, l, m, Convention::RadialN}; }
    static QuantumNumbers principal(int n, int l, int m = 0) { return {n, l, m, Convention::PrincipalN}; }

    /// Throws UsageError on |m| > l, n < 1 for PrincipalN, l >= n for PrincipalN, n < 0, l < 0.
    void validate() const;
    int radial_nodes() const { return convention == Convention::PrincipalN ? n - l - 1 : n; }
};

struct OscillatorSystem {
    double mass = 0.0;  // eV
    double omega = 0.0; // eV

    OscillatorSystem(double mass_ev, double omega_ev);

    double lambda() const;   // sqrt(m omega)
    double strength() const; // k = m omega^2 / 2
};

struct HydrogenSystem {
    double mass = 0.0;
    double alpha = 0.0;

    HydrogenSystem(double mass_ev, double fine_structure);

    double gamma(int principal_n) const; // m alpha / n
};

struct CorrectedLevel {
    int n = 0;
    int l = 0;
    double e0 = 0.0;
    double shift = 0.0;
    double total = 0.0;
    int multiplicity = 1;
};

// Radial factors R(r) of the unperturbed eigenfunctions, Y_lm stripped.
// Normalized as integral_0^inf R^2 r^2 dr = 1.

double oscillator_radial_wavefunction(const OscillatorSystem& sys, const QuantumNumbers& qn, double r);
double hydrogen_radial_wavefunction(const HydrogenSystem& sys, const QuantumNumbers& qn, double r);

std::vector<double> oscillator_radial_wavefunction(const OscillatorSystem& sys, const QuantumNumbers& qn,
                                                   std::span<const double> radii);
std::vector<double> hydrogen_radial_wavefunction(const HydrogenSystem& sys, const QuantumNumbers& qn,
                                                 std::span<const double> radii);

/// Coefficient c such that the oscillator shift is c * (delta_x0)^2 * m omega^2:
/// (6n^2 + 9n + 6nl + l^2 + 4l + 15/4) / 5.
double oscillator_shift_coefficient(int n, int l);
/// Coefficient c such that the hydrogen shift is c * (delta_x0)^2 * m^3 alpha^4:
/// (4n - 3(l + 1/2)) / (5 n^4 (l + 1/2)).
double hydrogen_shift_coefficient(int n, int l);

double oscillator_energy(const OscillatorSystem& sys, int n, int l);
double hydrogen_energy(const HydrogenSystem& sys, int n);

CorrectedLevel oscillator_spectrum(const OscillatorSystem& sys, const DeformationParams& d, const QuantumNumbers& qn);
CorrectedLevel hydrogen_spectrum(const HydrogenSystem& sys, const DeformationParams& d, const QuantumNumbers& qn);

/// <f> = integral R^2 f(r) r^2 dr by Gauss-Laguerre in the system's natural
/// variable (x = (lambda r)^2, alpha = -1/2 rule). Exact for polynomial f in r^2
/// of modest degree given enough points.
template <typename F>
double oscillator_expectation(const OscillatorSystem& sys, const QuantumNumbers& qn, const QuantumNumbers& qn2,
                              F&& f, int points);
template <typename F>
double hydrogen_expectation(const HydrogenSystem& sys, const QuantumNumbers& qn, const QuantumNumbers& qn2, F&& f,
                            int points);

} // namespace minlen

#include "analytic_impl.hpp"
