#pragma once

// Physical constants and unit conversions. Internally everything is natural
// units (hbar = c = 1) with eV as the only energy scale, so lengths are eV^-1.

namespace minlen::constants {

inline constexpr double electron_mass_ev = 0.51099895e6;
inline constexpr double fine_structure = 1.0 / 137.035999;
inline constexpr double hbar_c_mev_fm = 197.3269804;
inline constexpr double hbar_c_ev_fm = hbar_c_mev_fm * 1.0e6;
inline constexpr double planck_h_ev_s = 4.135667696e-15;
inline constexpr double pi = 3.141592653589793238462643383279502884;

static_assert(electron_mass_ev > 0.0);
static_assert(fine_structure > 0.0 && fine_structure < 1.0);
static_assert(hbar_c_ev_fm > 0.0);

} // namespace minlen::constants

namespace minlen::units {

/// fm -> eV^-1. Throws DomainError for negative input.
double length_to_natural(double fm);
/// eV^-1 -> fm.
double natural_to_length(double inverse_ev);

/// h * f, with f in kHz, result in eV.
double frequency_to_energy(double khz);
/// Inverse of frequency_to_energy.
double energy_to_frequency(double ev);

} // namespace minlen::units
