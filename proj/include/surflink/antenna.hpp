#pragma once

#include <string>

namespace surflink {

/// A dielectrically loaded helical monopole.
struct AntennaRecord {
    double f_air;     ///< free-space resonance, Hz
    double eps_r;     ///< relative permittivity of the loading medium
    double length;    ///< m
    double diameter;  ///< m
    std::string notes;
};

/// f_air / sqrt(eps_r). Throws DomainError for eps_r < 1.
double resonance_in_medium(double f_air, double eps_r);

/// sqrt(eps_r): how much smaller a resonant structure becomes inside the medium.
double size_reduction_factor(double eps_r);

/// The 50 MHz helix in its de-ionized water enclosure, as built.
AntennaRecord reference_helix();

/// Measured enclosure advantage at 2.45 GHz in 0.5 % brackish water. A measurement only, not
/// produced or consumed by any model here.
struct EnclosureMeasurement {
    double freq_hz = 2.45e9;
    double salinity_percent = 0.5;
    double advantage_db = 20.0;
    const char* label = "measured: enclosed vs directly immersed antennas, approximate";
};

} // namespace surflink
