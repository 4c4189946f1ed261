#include "surflink/surfwave.hpp"

#include <cmath>
#include <limits>

#include "surflink/constants.hpp"
#include "surflink/errors.hpp"

namespace surflink {

namespace {

void check_inputs(double lambda0, double eps_im)
{
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
        throw DomainError("wavelength must be positive");
    if (!(eps_im > 0.0) || !std::isfinite(eps_im))
        throw DomainError("eps'' must be positive; a lossless interface has no surface-wave length");
}

} // namespace

double penetration_depth(double lambda0, double eps_im)
{
    check_inputs(lambda0, eps_im);
    return lambda0 / (4.0 * pi * std::sqrt(eps_im));
}

double propagation_length(double lambda0, double eps_im)
{
    check_inputs(lambda0, eps_im);
    return lambda0 * eps_im / pi;
}

SurfaceWaveParams surface_wave_params(double lambda0, double eps_im)
{
    return {penetration_depth(lambda0, eps_im), propagation_length(lambda0, eps_im), lambda0, eps_im};
}

ZenneckPole zenneck_wavenumber(std::complex<double> eps, double k0)
{
    if (!(k0 > 0.0))
        throw DomainError("k0 must be positive");
    if (eps.imag() > 0.0)
        throw DomainError("permittivity must have Im(eps) <= 0 under e^{+j omega t}");
    const std::complex<double> denom = eps + 1.0;
    if (std::abs(denom) <= 1e-12 * std::max(1.0, std::abs(eps)))
        throw DomainError("eps = -1 is a singular configuration for the Zenneck pole");

    ZenneckPole pole;
    pole.k_rho = k0 * std::sqrt(eps / denom);
    if (pole.k_rho.imag() > 0.0)
        pole.k_rho = -pole.k_rho;
    if (pole.k_rho.real() < 0.0 && pole.k_rho.imag() == 0.0)
        pole.k_rho = -pole.k_rho;

    pole.k_z = std::sqrt(eps * k0 * k0 - pole.k_rho * pole.k_rho);
    if (pole.k_z.imag() > 0.0)
        pole.k_z = -pole.k_z;

    constexpr double inf = std::numeric_limits<double>::infinity();
    pole.propagation_length = pole.k_rho.imag() == 0.0 ? inf : 1.0 / std::abs(pole.k_rho.imag());
    pole.water_decay_depth = pole.k_z.imag() == 0.0 ? inf : 1.0 / std::abs(pole.k_z.imag());
    return pole;
}

double depth_at_level(double level_db, double L_z, DbConvention convention)
{
    if (!(level_db <= 0.0))
        throw DomainError("level must be <= 0 dB");
    if (!(L_z > 0.0))
        throw DomainError("penetration depth must be positive");
    const double db_per_neper = convention == DbConvention::Field ? 20.0 : 10.0;
    return -level_db * std::log(10.0) / db_per_neper * L_z + 0.0;
}

} // namespace surflink
