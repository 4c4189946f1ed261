#pragma once

// Vertical electric dipole near a planar interface between two homogeneous half-spaces.
//
// Coordinates: z > 0 is the upper medium (air by default), z < 0 the lower one (seawater).
// Points with z == 0 belong to the upper medium. Time convention e^{+j omega t}.
//
// The field is built from the vertical Hertz potential. In the source medium
//   Ez = Ez_direct + C * int lambda^3/u_s R(lambda) exp(-u_s(|z|+|z'|)) J0(lambda rho) dlambda,
// in the other medium
//   Ez = C * int lambda^3 * 2 eps_s/(eps_o u_s + eps_s u_o) exp(-u_s|z'| - u_o|z|) J0(lambda rho) dlambda,
// with C = p/(4 pi j omega eps0 eps_s) and u_i = sqrt(lambda^2 - k_i^2), Re(u_i) >= 0.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "surflink/media.hpp"
#include "surflink/quadrature.hpp"

namespace surflink {

struct DipoleSource {
    double depth = -0.5;  ///< signed z of the dipole, m (negative = in the water)
    double moment = 1.0;  ///< current-length product, A m
};

struct HalfSpaceProblem {
    Medium upper = Medium::air();
    Medium lower = Medium::seawater();
    RfContext ctx{50e6};
    DipoleSource source;

    /// Throws DomainError when the configuration is outside what the solver supports.
    void validate() const;
    bool homogeneous() const { return upper.same_material(lower); }
};

struct QuadratureConfig {
    double rel_tol = 1e-8;
    int max_tail_intervals = 60;
    int segment_points = 15;  ///< Gauss-Kronrod rule per panel: 15 or 21
    /// Evaluate the primary wave through the spectral integral instead of its closed form.
    /// Used to check the head/tail machinery against the Sommerfeld identity.
    bool spectral_direct = false;

    void validate() const;
};

struct FieldSample {
    double range = 0.0;
    double depth = 0.0;
    cplx Ez{};
    double reference = 1.0;  ///< V/m
    double magnitude_db = -std::numeric_limits<double>::infinity();
    int tail_intervals = 0;
    int grazing_evaluations = 0;  ///< spectral points evaluated with a branch-point loss perturbation
};

/// Plane-wave TM (Hertz-potential) reflection coefficient seen from the source-side medium:
///   R = (eps_o u_s - eps_s u_o) / (eps_o u_s + eps_s u_o).
/// Tends to +1 over a perfect conductor and vanishes when both media match.
cplx reflection_coefficient_tm(double k_rho, const HalfSpaceProblem& problem);
cplx reflection_coefficient_tm(double k_rho, const HalfSpaceProblem& problem, int& grazing_evaluations);

/// Closed-form Ez of a vertical dipole in an unbounded medium of relative permittivity `eps`.
/// `dz` is z_observer - z_source.
cplx free_space_dipole_ez(cplx eps, const RfContext& ctx, double moment, double rho, double dz);

FieldSample field_at(const HalfSpaceProblem& problem, double range, double depth, const QuadratureConfig& cfg = {});

/// dB grid normalised to its maximum. Failed points hold NaN.
struct FieldMap {
    std::vector<double> ranges;
    std::vector<double> depths;
    std::vector<double> db;  ///< db[ir * depths.size() + id]
    std::size_t failures = 0;

    double at(std::size_t ir, std::size_t id) const { return db[ir * depths.size() + id]; }
    static bool missing(double v) { return std::isnan(v); }
};

/// Evaluates field_at over ranges x depths. Points are independent; `threads` == 0 picks the
/// hardware concurrency. The result does not depend on the thread count.
FieldMap field_map(const HalfSpaceProblem& problem, std::span<const double> ranges, std::span<const double> depths,
                   const QuadratureConfig& cfg = {}, unsigned threads = 0);

} // namespace surflink
