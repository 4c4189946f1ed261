#pragma once

// Two-path (surface wave + bulk) link model, link probability, PTT trial simulation and
// effective-parameter fitting against dive-trial records.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace surflink {

struct LinkModelParams {
    double L_z = 0.0851;         ///< surface-wave penetration depth, m
    double L_r = 9.0;            ///< effective surface-wave propagation length, m
    double delta = 0.0382;       ///< bulk skin depth, m
    double coupling_db = 0.0;    ///< lumped TX power + antenna coupling, dB
    double threshold_db = -115.0;///< detection threshold, same reference as coupling_db
    double sigma_fade_db = 6.0;  ///< log-normal fading spread, dB
    double r0 = 1.0;             ///< spreading reference distance, m

    void validate() const;
};

struct LinkScenario {
    double tx_depth;  ///< m below the surface
    double rx_depth;
    double range;     ///< horizontal separation, m

    void validate() const;
};

struct TrialRecord {
    double depth = 0.0;
    double range = 0.0;
    int attempts = 1;
    int successes = 0;

    void validate() const;
    double success_rate() const { return static_cast<double>(successes) / attempts; }
};

/// Per-path amplitudes in dB (20 log10), before the coupling offset.
struct PathLevels {
    double surface_db;
    double bulk_db;
};

PathLevels path_levels(const LinkScenario& s, const LinkModelParams& p);

/// coupling_db + 20 log10(max(A_surf, A_bulk)) with
///   A_surf = exp(-(d_tx + d_rx)/L_z - r/L_r) / sqrt(r/r0),
///   A_bulk = exp(-R/delta) / (R/r0),  R = sqrt(r^2 + (d_tx - d_rx)^2).
double two_path_gain(const LinkScenario& s, const LinkModelParams& p);

/// Phi((gain_db - threshold_db) / sigma_fade_db).
double link_probability(double gain_db, const LinkModelParams& p);

/// Divers at equal depth; p[i * ranges.size() + j] for depths[i], ranges[j].
struct ProbabilityGrid {
    std::vector<double> depths;
    std::vector<double> ranges;
    std::vector<double> p;

    double at(std::size_t i, std::size_t j) const { return p[i * ranges.size() + j]; }
};

ProbabilityGrid probability_grid(std::span<const double> depths, std::span<const double> ranges,
                                 const LinkModelParams& params);

struct TrialOutcome {
    int attempts;
    int successes;
    double p_hat;
};

/// Bernoulli trials from std::mt19937_64(seed). A draw succeeds when
/// (word >> 11) * 2^-53 < prob, so the sequence is fixed across platforms.
TrialOutcome simulate_trials(double prob, int attempts, std::uint64_t seed);

enum class FitParameter { L_r, L_z, coupling_db, sigma_fade_db };

std::string_view to_string(FitParameter p);
std::optional<FitParameter> parse_fit_parameter(std::string_view name);

struct FreeParameter {
    FitParameter which;
    double lower;
    double upper;
};

/// Default search interval used by the CLI when no bounds are given.
FreeParameter default_bounds(FitParameter which);

struct FitResult {
    LinkModelParams params;
    double objective = 0.0;
    int iterations = 0;        ///< local refinement iterations
    std::size_t grid_points = 0;
};

/// Sum of squared differences between modelled and observed success rates.
double fit_objective(std::span<const TrialRecord> records, const LinkModelParams& params);

/// Least-squares fit of the free parameters: a 25-point-per-dimension grid (log-spaced for
/// lengths and the fading spread) followed by Nelder-Mead refinement inside the bounds.
/// Grid ties go to the lexicographically smallest vector ordered L_r, L_z, coupling_db, sigma_fade_db.
///
/// Throws DomainError for empty/insufficient data or bad bounds, UnidentifiableError when every
/// record is all-success (or all-failure) and more than one parameter is free.
FitResult fit_parameters(std::span<const TrialRecord> records, const LinkModelParams& fixed,
                         std::span<const FreeParameter> free);

} // namespace surflink
