#pragma once

#include "analytic.hpp"

namespace minlen::bounds {

struct TransitionBoundInput {
    HydrogenSystem system;
    QuantumNumbers level_a;
    QuantumNumbers level_b;
    double precision_ev = 1e-12;
};

struct ExcitationBoundInput {
    double threshold_ev = 0.0;
};

/// Largest minimal length (fm) whose shift difference between the two levels
/// stays within the precision: sqrt(precision / |C_a - C_b|), with C_k the
/// (delta_x0)^2 coefficient of level k. Throws InsensitiveTransitionError for C_a == C_b.
double transition_bound(const TransitionBoundInput& input);

/// (delta_x0)^2 coefficient (eV^3) of a hydrogen level: m^3 alpha^4 (4n - 3(l+1/2)) / (5 n^4 (l+1/2)).
double transition_coefficient(const HydrogenSystem& sys, const QuantumNumbers& qn);

/// Full photon wavelength 2 pi hbar c / E in fm.
double excitation_bound(const ExcitationBoundInput& input);

/// beta = (delta_x0)^2 / 5 in eV^-2 for a length given in fm.
double beta_for_length_fm(double delta_x0_fm);

} // namespace minlen::bounds
