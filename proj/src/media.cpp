#include "surflink/media.hpp"

#include <cmath>
#include <string>

#include "surflink/errors.hpp"

namespace surflink {

namespace {

// 3.5 % salinity maps onto the conductivity behind the 270 Hz^1/2 m constant.
constexpr double kAnchorSalinity = 3.5;
constexpr double kAnchorConductivity = 3.475;

} // namespace

RfContext::RfContext(double freq_hz) : freq_(freq_hz)
{
    if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
        throw DomainError("frequency must be positive and finite, got " + std::to_string(freq_hz));
}

double loss_factor(const Medium& m, const RfContext& ctx)
{
    if (m.sigma < 0.0)
        throw DomainError("conductivity must be non-negative");
    return m.sigma / (ctx.omega() * PhysicalConstants::eps0);
}

cplx complex_permittivity(const Medium& m, const RfContext& ctx)
{
    return {m.eps_r, -loss_factor(m, ctx)};
}

double skin_depth_constant(double sigma)
{
    if (sigma == 0.0)
        throw InfiniteSkinDepthError("lossless medium (sigma = 0) has infinite skin depth");
    if (!(sigma > 0.0))
        throw DomainError("conductivity must be positive");
    return 1.0 / std::sqrt(pi * PhysicalConstants::mu0 * sigma);
}

double skin_depth(double sigma, double freq_hz)
{
    const RfContext ctx(freq_hz);
    return skin_depth_constant(sigma) / std::sqrt(ctx.freq());
}

double salinity_to_conductivity(double salinity_percent)
{
    if (!(salinity_percent >= 0.0 && salinity_percent <= 4.0))
        throw DomainError("salinity must lie in [0, 4] percent");
    return salinity_percent * (kAnchorConductivity / kAnchorSalinity);
}

} // namespace surflink
