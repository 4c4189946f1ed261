#include "surflink/antenna.hpp"

#include <cmath>

#include "surflink/errors.hpp"

namespace surflink {

double size_reduction_factor(double eps_r)
{
    if (!(eps_r >= 1.0) || !std::isfinite(eps_r))
        throw DomainError("relative permittivity must be >= 1");
    return std::sqrt(eps_r);
}

double resonance_in_medium(double f_air, double eps_r)
{
    if (!(f_air > 0.0) || !std::isfinite(f_air))
        throw DomainError("free-space resonance must be positive");
    return f_air / size_reduction_factor(eps_r);
}

AntennaRecord reference_helix()
{
    return {450e6, 81.0, 0.16, 0.007,
            "helical monopole over ground plane, trimmed from 450 MHz to 50 MHz in water; "
            "coax feed 11 cm long, tapped 11 turns from the grounded end; tip sharpened"};
}

} // namespace surflink
