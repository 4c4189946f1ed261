#include "surflink/linkmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "surflink/errors.hpp"

namespace surflink {

namespace {

constexpr double kDbPerNeper = 20.0 / std::numbers::ln10;

constexpr int kGridPointsPerDim = 25;
constexpr int kMaxRefineIterations = 500;
constexpr double kObjectiveTolerance = 1e-10;
constexpr double kSimplexTolerance = 1e-9;

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be positive and finite");
}

bool log_scaled(FitParameter p) { return p != FitParameter::coupling_db; }

double& slot(LinkModelParams& p, FitParameter which)
{
    switch (which) {
    case FitParameter::L_r:
        return p.L_r;
    case FitParameter::L_z:
        return p.L_z;
    case FitParameter::coupling_db:
        return p.coupling_db;
    case FitParameter::sigma_fade_db:
        return p.sigma_fade_db;
    }
    throw DomainError("unknown fit parameter");
}

// Search coordinates: log for positive scale parameters, identity for the dB offset.
struct Coordinates {
    std::vector<FreeParameter> free;
    std::vector<double> lo, hi;

    explicit Coordinates(std::vector<FreeParameter> f) : free(std::move(f))
    {
        for (const auto& fp : free) {
            lo.push_back(log_scaled(fp.which) ? std::log(fp.lower) : fp.lower);
            hi.push_back(log_scaled(fp.which) ? std::log(fp.upper) : fp.upper);
        }
    }

    std::vector<double> clamp(std::vector<double> y) const
    {
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] = std::clamp(y[i], lo[i], hi[i]);
        return y;
    }

    LinkModelParams apply(LinkModelParams base, const std::vector<double>& y) const
    {
        for (std::size_t i = 0; i < y.size(); ++i)
            slot(base, free[i].which) = log_scaled(free[i].which) ? std::exp(y[i]) : y[i];
        return base;
    }
};

struct Vertex {
    std::vector<double> y;
    double f;
};

} // namespace

void LinkModelParams::validate() const
{
    require_positive(L_z, "L_z");
    require_positive(L_r, "L_r");
    require_positive(delta, "delta");
    require_positive(r0, "r0");
    require_positive(sigma_fade_db, "sigma_fade_db");
    if (std::isnan(coupling_db) || std::isnan(threshold_db))
        throw DomainError("coupling and threshold must be numbers");
}

void LinkScenario::validate() const
{
    require_positive(tx_depth, "tx depth");
    require_positive(rx_depth, "rx depth");
    require_positive(range, "range");
}

void TrialRecord::validate() const
{
    if (!(depth > 0.0) || !(range > 0.0))
        throw DomainError("trial depth and range must be positive");
    if (attempts < 1)
        throw DomainError("trial attempts must be >= 1");
    if (successes < 0 || successes > attempts)
        throw DomainError("trial successes must lie in [0, attempts]");
}

PathLevels path_levels(const LinkScenario& s, const LinkModelParams& p)
{
    s.validate();
    p.validate();
    const double r = s.range;
    const double slant = std::hypot(r, s.tx_depth - s.rx_depth);
    // Natural logs of the two amplitudes; never exponentiated, so deep cells stay finite.
    const double ln_surface = -(s.tx_depth + s.rx_depth) / p.L_z - r / p.L_r - 0.5 * std::log(r / p.r0);
    const double ln_bulk = -slant / p.delta - std::log(slant / p.r0);
    return {kDbPerNeper * ln_surface, kDbPerNeper * ln_bulk};
}

double two_path_gain(const LinkScenario& s, const LinkModelParams& p)
{
    const PathLevels lv = path_levels(s, p);
    return p.coupling_db + std::max(lv.surface_db, lv.bulk_db);
}

double link_probability(double gain_db, const LinkModelParams& p)
{
    require_positive(p.sigma_fade_db, "sigma_fade_db");
    const double margin = (gain_db - p.threshold_db) / p.sigma_fade_db;
    return 0.5 * std::erfc(-margin / std::numbers::sqrt2);
}

ProbabilityGrid probability_grid(std::span<const double> depths, std::span<const double> ranges,
                                 const LinkModelParams& params)
{
    for (auto grid : {depths, ranges}) {
        if (grid.empty())
            throw DomainError("probability grid axes must be non-empty");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            require_positive(grid[i], "grid value");
            if (i > 0 && !(grid[i] > grid[i - 1]))
                throw DomainError("probability grid axes must be strictly increasing");
        }
    }
    ProbabilityGrid g;
    g.depths.assign(depths.begin(), depths.end());
    g.ranges.assign(ranges.begin(), ranges.end());
    g.p.reserve(depths.size() * ranges.size());
    for (double d : depths)
        for (double r : ranges)
            g.p.push_back(link_probability(two_path_gain({d, d, r}, params), params));
    return g;
}

TrialOutcome simulate_trials(double prob, int attempts, std::uint64_t seed)
{
    if (!(prob >= 0.0 && prob <= 1.0))
        throw DomainError("probability must lie in [0, 1]");
    if (attempts < 1)
        throw DomainError("attempts must be >= 1");
    std::mt19937_64 engine(seed);
    int successes = 0;
    for (int i = 0; i < attempts; ++i) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        if (u < prob)
            ++successes;
    }
    return {attempts, successes, static_cast<double>(successes) / attempts};
}

std::string_view to_string(FitParameter p)
{
    switch (p) {
    case FitParameter::L_r:
        return "L_r";
    case FitParameter::L_z:
        return "L_z";
    case FitParameter::coupling_db:
        return "coupling_db";
    case FitParameter::sigma_fade_db:
        return "sigma_fade_db";
    }
    return "?";
}

std::optional<FitParameter> parse_fit_parameter(std::string_view name)
{
    for (auto p : {FitParameter::L_r, FitParameter::L_z, FitParameter::coupling_db, FitParameter::sigma_fade_db})
        if (name == to_string(p))
            return p;
    return std::nullopt;
}

FreeParameter default_bounds(FitParameter which)
{
    switch (which) {
    case FitParameter::L_r:
        return {which, 1.0, 100.0};
    case FitParameter::L_z:
        return {which, 0.005, 1.0};
    case FitParameter::coupling_db:
        return {which, -100.0, 100.0};
    case FitParameter::sigma_fade_db:
        return {which, 0.5, 30.0};
    }
    throw DomainError("unknown fit parameter");
}

double fit_objective(std::span<const TrialRecord> records, const LinkModelParams& params)
{
    double sum = 0.0;
    for (const auto& rec : records) {
        const double p = link_probability(two_path_gain({rec.depth, rec.depth, rec.range}, params), params);
        const double d = p - rec.success_rate();
        sum += d * d;
    }
    return sum;
}

FitResult fit_parameters(std::span<const TrialRecord> records, const LinkModelParams& fixed,
                         std::span<const FreeParameter> free)
{
    if (records.empty())
        throw DomainError("no trial records to fit");
    for (const auto& r : records)
        r.validate();
    fixed.validate();
    if (records.size() < free.size())
        throw DomainError("need at least one trial record per free parameter");

    std::vector<FreeParameter> order(free.begin(), free.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.which < b.which; });
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& fp = order[i];
        if (i > 0 && order[i - 1].which == fp.which)
            throw DomainError("parameter '" + std::string(to_string(fp.which)) + "' listed twice");
        if (!std::isfinite(fp.lower) || !std::isfinite(fp.upper) || !(fp.lower < fp.upper))
            throw DomainError("bounds for '" + std::string(to_string(fp.which)) + "' must be finite with lower < upper");
        if (log_scaled(fp.which) && !(fp.lower > 0.0))
            throw DomainError("bounds for '" + std::string(to_string(fp.which)) + "' must be positive");
    }

    if (order.size() > 1) {
        const bool all_one = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.successes == r.attempts; });
        const bool all_zero = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.successes == 0; });
        if (all_one || all_zero)
            throw UnidentifiableError("every record is all-success or all-failure; more than one free parameter "
                                      "cannot be identified");
    }

    FitResult result;
    if (order.empty()) {
        result.params = fixed;
        result.objective = fit_objective(records, fixed);
        return result;
    }

    const Coordinates coords(order);
    const std::size_t dims = order.size();
    auto evaluate = [&](const std::vector<double>& y) { return fit_objective(records, coords.apply(fixed, y)); };

    // Coarse grid, odometer order with the first (lexicographically smallest) name most significant.
    std::vector<int> idx(dims, 0);
    std::vector<double> y(dims);
    Vertex best{{}, std::numeric_limits<double>::infinity()};
    auto axis = [&](std::size_t d, int i) {
        return coords.lo[d] + (coords.hi[d] - coords.lo[d]) * static_cast<double>(i) / (kGridPointsPerDim - 1);
    };
    for (;;) {
        for (std::size_t d = 0; d < dims; ++d)
            y[d] = axis(d, idx[d]);
        const double f = evaluate(y);
        ++result.grid_points;
        // Ascending enumeration: a later point with an equal objective is never lexicographically smaller.
        if (f < best.f)
            best = {y, f};
        std::size_t d = dims;
        while (d > 0) {
            --d;
            if (++idx[d] < kGridPointsPerDim)
                break;
            idx[d] = 0;
            if (d == 0) {
                d = dims + 1;
                break;
            }
        }
        if (d == dims + 1)
            break;
    }

    // Nelder-Mead around the best grid point; initial edges one grid step long, pointing inward.
    std::vector<Vertex> simplex{best};
    for (std::size_t d = 0; d < dims; ++d) {
        const double step = (coords.hi[d] - coords.lo[d]) / (kGridPointsPerDim - 1);
        std::vector<double> v = best.y;
        v[d] = (v[d] + step <= coords.hi[d]) ? v[d] + step : v[d] - step;
        simplex.push_back({v, evaluate(v)});
    }
    auto by_value = [](const Vertex& a, const Vertex& b) {
        if (a.f != b.f)
            return a.f < b.f;
        return a.y < b.y;
    };

    int it = 0;
    for (; it < kMaxRefineIterations; ++it) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        double size = 0.0;
        for (std::size_t k = 1; k < simplex.size(); ++k)
            for (std::size_t d = 0; d < dims; ++d)
                size = std::max(size, std::abs(simplex[k].y[d] - simplex[0].y[d]));
        if (simplex.back().f - simplex.front().f < kObjectiveTolerance && size < kSimplexTolerance)
            break;

        std::vector<double> centroid(dims, 0.0);
        for (std::size_t k = 0; k + 1 < simplex.size(); ++k)
            for (std::size_t d = 0; d < dims; ++d)
                centroid[d] += simplex[k].y[d] / static_cast<double>(dims);
        auto toward = [&](double t) {
            std::vector<double> v(dims);
            for (std::size_t d = 0; d < dims; ++d)
                v[d] = centroid[d] + t * (simplex.back().y[d] - centroid[d]);
            v = coords.clamp(std::move(v));
            return Vertex{v, evaluate(v)};
        };

        const Vertex reflected = toward(-1.0);
        if (reflected.f < simplex.front().f) {
            const Vertex expanded = toward(-2.0);
            simplex.back() = expanded.f < reflected.f ? expanded : reflected;
        } else if (reflected.f < simplex[simplex.size() - 2].f) {
            simplex.back() = reflected;
        } else {
            const bool outside = reflected.f < simplex.back().f;
            const Vertex contracted = toward(outside ? -0.5 : 0.5);
            if (contracted.f < std::min(reflected.f, simplex.back().f)) {
                simplex.back() = contracted;
            } else {
                for (std::size_t k = 1; k < simplex.size(); ++k) {
                    for (std::size_t d = 0; d < dims; ++d)
                        simplex[k].y[d] = simplex[0].y[d] + 0.5 * (simplex[k].y[d] - simplex[0].y[d]);
                    simplex[k].f = evaluate(simplex[k].y);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);

    result.iterations = it;
    result.params = coords.apply(fixed, simplex.front().y);
    result.objective = simplex.front().f;
    return result;
}

} // namespace surflink
