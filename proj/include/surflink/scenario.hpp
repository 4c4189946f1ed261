#pragma once

// Scenario files (`key = value` lines) and trial CSV files.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surflink/errors.hpp"
#include "surflink/halfspace.hpp"
#include "surflink/linkmodel.hpp"

namespace surflink {

/// Malformed input file; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public DomainError {
public:
    ParseError(const std::string& what, std::size_t line) : DomainError(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct Scenario {
    std::optional<double> freq_hz;
    std::optional<double> eps_real;
    std::optional<double> sigma_s_per_m;
    std::optional<double> salinity_percent;
    std::optional<double> L_r_m;
    std::optional<double> L_z_m;
    std::optional<double> coupling_db;
    std::optional<double> threshold_db;
    std::optional<double> sigma_fade_db;
    std::optional<double> r0_m;
    std::optional<double> source_depth_m;  ///< signed z of the dipole
    std::optional<double> range_min_m;
    std::optional<double> range_max_m;
    std::optional<int> range_steps;
    std::optional<double> depth_min_m;
    std::optional<double> depth_max_m;
    std::optional<int> depth_steps;
    std::optional<std::uint64_t> seed;

    double frequency() const { return freq_hz.value_or(50e6); }
    /// Explicit conductivity, else the salinity map, else 3.475 S/m.
    double conductivity() const;
    Medium water() const;

    /// Air over `water()`, or a homogeneous space when the water is lossless with eps' = 1.
    HalfSpaceProblem halfspace() const;
    /// delta follows from conductivity and frequency; other fields fall back to LinkModelParams defaults.
    LinkModelParams link_params() const;

    std::vector<double> ranges() const;
    std::vector<double> depths() const;
};

Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::filesystem::path& path);

/// n points from lo to hi inclusive; n == 1 yields {lo}.
std::vector<double> linear_grid(double lo, double hi, int n);

inline constexpr const char* kTrialCsvHeader = "depth_m,range_m,attempts,successes";

/// Header must match kTrialCsvHeader exactly. Row numbers in errors count the header as row 1.
std::vector<TrialRecord> parse_trial_csv(std::istream& in);
std::vector<TrialRecord> load_trial_csv(const std::filesystem::path& path);
void write_trial_csv(std::ostream& out, std::span<const TrialRecord> records);

} // namespace surflink
