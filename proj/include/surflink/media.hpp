#pragma once

#include <complex>
#include <string>

#include "surflink/constants.hpp"

namespace surflink {

using cplx = std::complex<double>;

/// A homogeneous, non-magnetic material.
struct Medium {
    double eps_r = 1.0;  ///< real relative permittivity
    double sigma = 0.0;  ///< conductivity, S/m
    std::string name;

    static Medium air() { return {1.0, 0.0, "air"}; }
    static Medium vacuum() { return {1.0, 0.0, "vacuum"}; }
    /// eps' = 81, sigma = 3.475 S/m: the conductivity that reproduces the 270 Hz^1/2 m skin-depth constant.
    static Medium seawater() { return {81.0, 3.475, "seawater"}; }
    /// Perfect conductor realised as a very large finite conductivity.
    static Medium pec() { return {1.0, 1e9, "pec"}; }

    bool same_material(const Medium& other) const { return eps_r == other.eps_r && sigma == other.sigma; }
};

/// Frequency plus the quantities derived from it.
class RfContext {
public:
    explicit RfContext(double freq_hz);

    double freq() const { return freq_; }
    double omega() const { return two_pi * freq_; }
    double lambda0() const { return PhysicalConstants::c / freq_; }
    double k0() const { return omega() / PhysicalConstants::c; }

private:
    double freq_;
};

/// Loss part eps'' = sigma/(omega*eps0), always >= 0.
double loss_factor(const Medium& m, const RfContext& ctx);

/// Complex relative permittivity eps' - j*eps'' (time convention e^{+j omega t}).
cplx complex_permittivity(const Medium& m, const RfContext& ctx);

/// Plane-wave skin depth 1/sqrt(pi*mu0*sigma*f). Throws InfiniteSkinDepthError for sigma == 0.
double skin_depth(double sigma, double freq_hz);

/// delta*sqrt(f), independent of frequency (about 270 Hz^1/2 m for seawater).
double skin_depth_constant(double sigma);

/// Rough linear salinity map anchored at 3.5 % -> 3.475 S/m. Valid for 0..4 %.
double salinity_to_conductivity(double salinity_percent);

} // namespace surflink
