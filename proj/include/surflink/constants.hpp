#pragma once

#include <cmath>
#include <numbers>

namespace surflink {

/// CODATA 2018 values. The speed of light is derived so that c = 1/sqrt(mu0*eps0) holds exactly
/// in floating point up to rounding.
struct PhysicalConstants {
    static constexpr double mu0 = 1.25663706212e-6;   // H/m
    static constexpr double eps0 = 8.8541878128e-12;  // F/m
    static constexpr double c = 299792458.0;          // m/s
};

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

} // namespace surflink
