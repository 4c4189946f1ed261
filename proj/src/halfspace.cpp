#include "surflink/halfspace.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "surflink/errors.hpp"

namespace surflink {

namespace {

constexpr cplx j{0.0, 1.0};

// Breakpoints whose exponential weight exp(-lambda * decay) is below e^-60 carry nothing.
constexpr double kNegligibleExponent = 60.0;

cplx vertical_wavenumber(double lam, cplx k_sq, int& grazing)
{
    cplx arg = lam * lam - k_sq;
    if (std::abs(arg) <= 1e-14 * std::abs(k_sq)) {
        ++grazing;
        arg = lam * lam - k_sq * cplx(1.0, -1e-12);
    }
    if (arg.imag() == 0.0 && arg.real() < 0.0)
        return {0.0, std::sqrt(-arg.real())};
    return std::sqrt(arg);
}

bool in_upper(double z) { return z >= 0.0; }

struct Layout {
    cplx eps_s, eps_o;   // complex relative permittivities, source side and other side
    cplx ksq_s, ksq_o;   // k^2
    double h_s;          // |z'|
    double k0;
};

Layout layout_for(const HalfSpaceProblem& p)
{
    const cplx eps_up = complex_permittivity(p.upper, p.ctx);
    const cplx eps_lo = complex_permittivity(p.lower, p.ctx);
    const bool src_up = in_upper(p.source.depth);
    Layout l;
    l.eps_s = src_up ? eps_up : eps_lo;
    l.eps_o = src_up ? eps_lo : eps_up;
    l.k0 = p.ctx.k0();
    l.ksq_s = l.eps_s * l.k0 * l.k0;
    l.ksq_o = l.eps_o * l.k0 * l.k0;
    l.h_s = std::abs(p.source.depth);
    return l;
}

std::vector<double> breakpoints_for(const HalfSpaceProblem& p, double decay)
{
    const double k0 = p.ctx.k0();
    std::vector<double> all{(k0 * std::sqrt(complex_permittivity(p.upper, p.ctx))).real(),
                            (k0 * std::sqrt(complex_permittivity(p.lower, p.ctx))).real()};
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<double> kept{all.front()};
    for (std::size_t i = 1; i < all.size(); ++i)
        if (decay == 0.0 || all[i] * decay < kNegligibleExponent)
            kept.push_back(all[i]);
    return kept;
}

SommerfeldSettings settings_from(const QuadratureConfig& cfg)
{
    return {cfg.rel_tol, cfg.max_tail_intervals, cfg.segment_points};
}

} // namespace

void HalfSpaceProblem::validate() const
{
    if (!(source.moment > 0.0))
        throw DomainError("dipole moment must be positive");
    if (!std::isfinite(source.depth))
        throw DomainError("source depth must be finite");
    for (const Medium* m : {&upper, &lower}) {
        if (!(m->eps_r >= 1.0))
            throw DomainError("relative permittivity must be >= 1 for medium '" + m->name + "'");
        if (!(m->sigma >= 0.0))
            throw DomainError("conductivity must be >= 0 for medium '" + m->name + "'");
    }
    if (!(lower.sigma > 0.0) && !homogeneous())
        throw DomainError("the lower half-space must be lossy unless both media are identical");
}

void QuadratureConfig::validate() const
{
    if (!(rel_tol > 0.0 && rel_tol < 1e-2))
        throw DomainError("rel_tol must lie in (0, 1e-2)");
    if (max_tail_intervals < 8)
        throw DomainError("max_tail_intervals must be >= 8");
    if (segment_points != 15 && segment_points != 21)
        throw DomainError("segment_points must be 15 or 21");
}

cplx reflection_coefficient_tm(double k_rho, const HalfSpaceProblem& problem, int& grazing_evaluations)
{
    if (!(k_rho >= 0.0))
        throw DomainError("k_rho must be real and non-negative");
    const Layout l = layout_for(problem);
    if (problem.homogeneous())
        return {};
    const cplx u_s = vertical_wavenumber(k_rho, l.ksq_s, grazing_evaluations);
    const cplx u_o = vertical_wavenumber(k_rho, l.ksq_o, grazing_evaluations);
    return (l.eps_o * u_s - l.eps_s * u_o) / (l.eps_o * u_s + l.eps_s * u_o);
}

cplx reflection_coefficient_tm(double k_rho, const HalfSpaceProblem& problem)
{
    int ignored = 0;
    return reflection_coefficient_tm(k_rho, problem, ignored);
}

cplx free_space_dipole_ez(cplx eps, const RfContext& ctx, double moment, double rho, double dz)
{
    const double r = std::hypot(rho, dz);
    if (r == 0.0)
        throw DomainError("field requested at the source point");
    const cplx k = ctx.k0() * std::sqrt(eps);
    const cplx amp = moment / (4.0 * pi * j * ctx.omega() * PhysicalConstants::eps0 * eps);
    const double cos2 = (dz / r) * (dz / r);
    const cplx a = j * k + 1.0 / r;
    const cplx g = std::exp(-j * k * r) / r;
    return amp * g * (k * k + (a * a + 1.0 / (r * r)) * cos2 - a * (1.0 - cos2) / r);
}

FieldSample field_at(const HalfSpaceProblem& problem, double range, double depth, const QuadratureConfig& cfg)
{
    problem.validate();
    cfg.validate();
    if (!(range >= 0.0) || !std::isfinite(range))
        throw DomainError("range must be non-negative");
    if (!std::isfinite(depth))
        throw DomainError("depth must be finite");
    if (range == 0.0 && depth == problem.source.depth)
        throw DomainError("field requested at the source point");

    const Layout l = layout_for(problem);
    const bool same_side = in_upper(depth) == in_upper(problem.source.depth);
    const cplx amp = problem.source.moment /
                     (4.0 * pi * j * problem.ctx.omega() * PhysicalConstants::eps0 * l.eps_s);
    const double h_o = std::abs(depth);
    const auto settings = settings_from(cfg);

    FieldSample out;
    out.range = range;
    out.depth = depth;
    int grazing = 0;

    if (same_side) {
        const double dz = depth - problem.source.depth;
        if (cfg.spectral_direct) {
            auto direct = [&](double lam) {
                const cplx u = vertical_wavenumber(lam, l.ksq_s, grazing);
                return lam * lam * lam / u * std::exp(-u * std::abs(dz));
            };
            const double decay = std::abs(dz);
            const auto bp = breakpoints_for(problem, decay);
            const auto r = sommerfeld_integral(direct, range, bp, decay, 2.0, settings);
            out.Ez += amp * r.value;
            out.tail_intervals += r.tail_intervals;
        } else {
            out.Ez += free_space_dipole_ez(l.eps_s, problem.ctx, problem.source.moment, range, dz);
        }

        if (!problem.homogeneous()) {
            const double decay = l.h_s + h_o;
            auto reflected = [&](double lam) {
                const cplx u_s = vertical_wavenumber(lam, l.ksq_s, grazing);
                const cplx u_o = vertical_wavenumber(lam, l.ksq_o, grazing);
                const cplx refl = (l.eps_o * u_s - l.eps_s * u_o) / (l.eps_o * u_s + l.eps_s * u_o);
                return lam * lam * lam / u_s * refl * std::exp(-u_s * decay);
            };
            const auto bp = breakpoints_for(problem, decay);
            const auto r = sommerfeld_integral(reflected, range, bp, decay, 2.0, settings);
            out.Ez += amp * r.value;
            out.tail_intervals += r.tail_intervals;
        }
    } else {
        const double decay = l.h_s + h_o;
        auto transmitted = [&](double lam) {
            const cplx u_s = vertical_wavenumber(lam, l.ksq_s, grazing);
            const cplx u_o = vertical_wavenumber(lam, l.ksq_o, grazing);
            return lam * lam * lam * 2.0 * l.eps_s / (l.eps_o * u_s + l.eps_s * u_o) *
                   std::exp(-u_s * l.h_s - u_o * h_o);
        };
        const auto bp = breakpoints_for(problem, decay);
        const auto r = sommerfeld_integral(transmitted, range, bp, decay, 2.0, settings);
        out.Ez = amp * r.value;
        out.tail_intervals = r.tail_intervals;
    }

    out.grazing_evaluations = grazing;
    out.magnitude_db = 20.0 * std::log10(std::abs(out.Ez) / out.reference);
    return out;
}

namespace {

void check_grid(std::span<const double> g, const char* what)
{
    if (g.empty())
        throw DomainError(std::string(what) + " grid is empty");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1]))
            throw DomainError(std::string(what) + " grid must be strictly increasing");
}

} // namespace

FieldMap field_map(const HalfSpaceProblem& problem, std::span<const double> ranges, std::span<const double> depths,
                   const QuadratureConfig& cfg, unsigned threads)
{
    check_grid(ranges, "range");
    check_grid(depths, "depth");
    problem.validate();
    cfg.validate();

    FieldMap map;
    map.ranges.assign(ranges.begin(), ranges.end());
    map.depths.assign(depths.begin(), depths.end());
    const std::size_t total = ranges.size() * depths.size();
    map.db.assign(total, std::numeric_limits<double>::quiet_NaN());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const std::size_t ir = idx / depths.size();
            const std::size_t id = idx % depths.size();
            try {
                map.db[idx] = field_at(problem, ranges[ir], depths[id], cfg).magnitude_db;
            } catch (const std::exception&) {
                // left as NaN
            }
        }
    };
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t)
            pool.emplace_back(worker);
        worker();
    }

    double peak = -std::numeric_limits<double>::infinity();
    for (double v : map.db) {
        if (std::isnan(v) || !std::isfinite(v)) {
            if (std::isnan(v))
                ++map.failures;
            continue;
        }
        peak = std::max(peak, v);
    }
    if (map.failures == total || !std::isfinite(peak))
        throw MapError("every point of the field map failed");
    for (double& v : map.db)
        if (!std::isnan(v))
            v -= peak;
    return map;
}

} // namespace surflink
