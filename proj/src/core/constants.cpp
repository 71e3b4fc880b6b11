#include "constants.hpp"

#include "errors.hpp"

#include <cmath>
#include <string>

namespace minlen::units {

namespace {

void require_non_negative(double value, const char* what)
{
    if (!(value >= 0.0)) {
        throw DomainError(std::string(what) + " must be non-negative, got " + std::to_string(value));
    }
}

} // namespace

double length_to_natural(double fm)
{
    require_non_negative(fm, "length");
    return fm / constants::hbar_c_ev_fm;
}

double natural_to_length(double inverse_ev)
{
    require_non_negative(inverse_ev, "length");
    return inverse_ev * constants::hbar_c_ev_fm;
}

double frequency_to_energy(double khz)
{
    require_non_negative(khz, "frequency");
    return constants::planck_h_ev_s * (khz * 1.0e3);
}

double energy_to_frequency(double ev)
{
    require_non_negative(ev, "energy");
    return ev / constants::planck_h_ev_s * 1.0e-3;
}

} // namespace minlen::units
