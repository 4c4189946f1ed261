#include "surflink/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "surflink/media.hpp"

namespace surflink {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

template <class T>
std::optional<T> parse_number(std::string_view text)
{
    T value{};
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (!text.empty() && text.front() == '+')
        ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        return std::nullopt;
    return value;
}

} // namespace

double Scenario::conductivity() const
{
    if (sigma_s_per_m)
        return *sigma_s_per_m;
    if (salinity_percent)
        return salinity_to_conductivity(*salinity_percent);
    return Medium::seawater().sigma;
}

Medium Scenario::water() const
{
    return {eps_real.value_or(81.0), conductivity(), "water"};
}

HalfSpaceProblem Scenario::halfspace() const
{
    HalfSpaceProblem p;
    p.upper = Medium::air();
    p.lower = water();
    p.ctx = RfContext(frequency());
    p.source.depth = source_depth_m.value_or(-0.5);
    p.validate();
    return p;
}

LinkModelParams Scenario::link_params() const
{
    LinkModelParams p;
    p.delta = skin_depth(conductivity(), frequency());
    if (L_r_m)
        p.L_r = *L_r_m;
    if (L_z_m)
        p.L_z = *L_z_m;
    if (coupling_db)
        p.coupling_db = *coupling_db;
    if (threshold_db)
        p.threshold_db = *threshold_db;
    if (sigma_fade_db)
        p.sigma_fade_db = *sigma_fade_db;
    if (r0_m)
        p.r0 = *r0_m;
    p.validate();
    return p;
}

std::vector<double> linear_grid(double lo, double hi, int n)
{
    if (n < 1)
        throw DomainError("grid needs at least one step");
    if (n == 1)
        return {lo};
    if (!(hi > lo))
        throw DomainError("grid maximum must exceed its minimum");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    g.back() = hi;
    return g;
}

std::vector<double> Scenario::ranges() const
{
    if (!range_min_m || !range_max_m || !range_steps)
        throw DomainError("scenario needs range_min_m, range_max_m and range_steps");
    return linear_grid(*range_min_m, *range_max_m, *range_steps);
}

std::vector<double> Scenario::depths() const
{
    if (!depth_min_m || !depth_max_m || !depth_steps)
        throw DomainError("scenario needs depth_min_m, depth_max_m and depth_steps");
    return linear_grid(*depth_min_m, *depth_max_m, *depth_steps);
}

Scenario parse_scenario(std::istream& in)
{
    Scenario s;
    using Setter = std::function<bool(std::string_view)>;
    auto real = [](std::optional<double>& field) {
        return Setter([&field](std::string_view v) {
            field = parse_number<double>(v);
            return field.has_value();
        });
    };
    auto integer = [](std::optional<int>& field) {
        return Setter([&field](std::string_view v) {
            field = parse_number<int>(v);
            return field.has_value();
        });
    };
    const std::map<std::string, Setter, std::less<>> keys{
        {"freq_hz", real(s.freq_hz)},
        {"eps_real", real(s.eps_real)},
        {"sigma_s_per_m", real(s.sigma_s_per_m)},
        {"salinity_percent", real(s.salinity_percent)},
        {"L_r_m", real(s.L_r_m)},
        {"L_z_m", real(s.L_z_m)},
        {"coupling_db", real(s.coupling_db)},
        {"threshold_db", real(s.threshold_db)},
        {"sigma_fade_db", real(s.sigma_fade_db)},
        {"r0_m", real(s.r0_m)},
        {"source_depth_m", real(s.source_depth_m)},
        {"range_min_m", real(s.range_min_m)},
        {"range_max_m", real(s.range_max_m)},
        {"range_steps", integer(s.range_steps)},
        {"depth_min_m", real(s.depth_min_m)},
        {"depth_max_m", real(s.depth_max_m)},
        {"depth_steps", integer(s.depth_steps)},
        {"seed", Setter([&s](std::string_view v) {
             s.seed = parse_number<std::uint64_t>(v);
             return s.seed.has_value();
         })},
    };

    std::map<std::string, std::size_t, std::less<>> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = keys.find(key);
        if (it == keys.end())
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'", line_no);
        if (seen.contains(key))
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'", line_no);
        if (!it->second(value))
            throw ParseError("line " + std::to_string(line_no) + ": bad value for '" + std::string(key) + "'", line_no);
        seen.emplace(std::string(key), line_no);
    }
    if (s.sigma_s_per_m && s.salinity_percent) {
        const std::size_t line = std::max(seen.at("sigma_s_per_m"), seen.at("salinity_percent"));
        throw ParseError("line " + std::to_string(line) + ": give either sigma_s_per_m or salinity_percent, not both",
                         line);
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open scenario file '" + path.string() + "'");
    return parse_scenario(in);
}

std::vector<TrialRecord> parse_trial_csv(std::istream& in)
{
    std::vector<TrialRecord> records;
    std::string raw;
    if (!std::getline(in, raw))
        return records;
    if (raw != kTrialCsvHeader)
        throw ParseError("row 1: header must be exactly '" + std::string(kTrialCsvHeader) + "'", 1);

    std::size_t row = 1;
    while (std::getline(in, raw)) {
        ++row;
        if (raw.empty())
            continue;
        std::vector<std::string_view> cells;
        std::string_view rest = raw;
        for (;;) {
            const auto comma = rest.find(',');
            cells.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        auto fail = [&](const std::string& why) {
            return ParseError("row " + std::to_string(row) + ": " + why, row);
        };
        if (cells.size() != 4)
            throw fail("expected 4 fields, got " + std::to_string(cells.size()));
        const auto depth = parse_number<double>(cells[0]);
        const auto range = parse_number<double>(cells[1]);
        const auto attempts = parse_number<int>(cells[2]);
        const auto successes = parse_number<int>(cells[3]);
        if (!depth || !range || !attempts || !successes)
            throw fail("non-numeric field");
        TrialRecord rec{*depth, *range, *attempts, *successes};
        try {
            rec.validate();
        } catch (const DomainError& e) {
            throw fail(e.what());
        }
        records.push_back(rec);
    }
    return records;
}

std::vector<TrialRecord> load_trial_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open trial file '" + path.string() + "'");
    return parse_trial_csv(in);
}

void write_trial_csv(std::ostream& out, std::span<const TrialRecord> records)
{
    out << kTrialCsvHeader << '\n';
    std::ostringstream line;
    line.precision(6);
    for (const auto& r : records) {
        line.str({});
        line << r.depth << ',' << r.range << ',' << r.attempts << ',' << r.successes;
        out << line.str() << '\n';
    }
}

} // namespace surflink
