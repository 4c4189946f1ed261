#pragma once

#include <complex>

namespace surflink {

/// Closed-form surface-wave lengths for one (lambda0, eps'') pair.
struct SurfaceWaveParams {
    double L_z;      ///< 1/e penetration depth into the water, m
    double L_r;      ///< 1/e propagation length along the interface, m
    double lambda0;  ///< free-space wavelength, m
    double eps_im;   ///< loss part used
};

/// L_z = lambda0 / (4 pi sqrt(eps''))
double penetration_depth(double lambda0, double eps_im);

/// L_r = lambda0 eps'' / pi
double propagation_length(double lambda0, double eps_im);

SurfaceWaveParams surface_wave_params(double lambda0, double eps_im);

/// Principal-branch Zenneck pole of a lossy half-space under air.
struct ZenneckPole {
    std::complex<double> k_rho;    ///< radial wavenumber, Im <= 0
    std::complex<double> k_z;      ///< vertical wavenumber on the water side
    double propagation_length;     ///< 1/|Im k_rho|, infinite when lossless
    double water_decay_depth;      ///< 1/|Im k_z|
};

/// k_rho = k0 sqrt(eps/(eps+1)). `eps` is the complex relative permittivity of the lower medium.
ZenneckPole zenneck_wavenumber(std::complex<double> eps, double k0);

enum class DbConvention {
    Field,  ///< 20 log10, L_z is the amplitude decay length
    Power,  ///< 10 log10, L_z read as the intensity decay length
};

/// Depth at which the surface-wave level has dropped to `level_db` (<= 0).
double depth_at_level(double level_db, double L_z, DbConvention convention = DbConvention::Field);

} // namespace surflink
