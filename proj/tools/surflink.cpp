// surflink: command-line front end for the surface-wave link library.
//
// Exit codes: 0 success, 2 domain/usage error, 3 unidentifiable fit, 4 numerical non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "surflink/antenna.hpp"
#include "surflink/errors.hpp"
#include "surflink/halfspace.hpp"
#include "surflink/linkmodel.hpp"
#include "surflink/media.hpp"
#include "surflink/scenario.hpp"
#include "surflink/surfwave.hpp"

using json = nlohmann::ordered_json;
using namespace surflink;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitUnidentifiable = 3;
constexpr int kExitNonConvergence = 4;

std::string fmt6(double v)
{
    if (std::isnan(v))
        return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Results carry 6 significant digits in JSON too; echoed inputs keep full precision.
double round6(double v)
{
    return std::isfinite(v) ? std::stod(fmt6(v)) : v;
}

void print_kv(const std::string& key, double value) { std::cout << key << " = " << fmt6(value) << '\n'; }

// Sends CSV either to --out or to stdout.
class CsvSink {
public:
    explicit CsvSink(const std::string& path)
    {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_)
                throw DomainError("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

struct SkinDepthArgs {
    double freq = 0.0;
    std::optional<double> sigma, salinity;
    bool json = false;
};

void run_skin_depth(const SkinDepthArgs& a)
{
    const double sigma = a.sigma ? *a.sigma : salinity_to_conductivity(*a.salinity);
    const double delta = skin_depth(sigma, a.freq);
    const double constant = skin_depth_constant(sigma);
    if (a.json) {
        json j;
        j["freq_hz"] = a.freq;
        if (a.sigma)
            j["sigma_s_per_m"] = *a.sigma;
        else
            j["salinity_percent"] = *a.salinity;
        j["delta_m"] = round6(delta);
        j["constant_hz_sqrt_m"] = round6(constant);
        std::cout << j.dump(2) << '\n';
        return;
    }
    print_kv("delta_m", delta);
    print_kv("constant_hz_sqrt_m", constant);
}

struct SurfaceArgs {
    double freq = 0.0;
    std::optional<double> eps_im, eps_real, sigma, salinity;
    double level_db = -90.0;
    bool power_db = false;
    bool json = false;
};

void run_surface_params(const SurfaceArgs& a)
{
    const RfContext ctx(a.freq);
    double eps_im = 0.0;
    std::optional<ZenneckPole> pole;
    if (a.eps_im) {
        eps_im = *a.eps_im;
    } else {
        if (!a.eps_real || !(a.sigma || a.salinity))
            throw DomainError("give --eps-im, or --eps-real with --sigma or --salinity");
        const double sigma = a.sigma ? *a.sigma : salinity_to_conductivity(*a.salinity);
        const Medium water{*a.eps_real, sigma, "water"};
        eps_im = loss_factor(water, ctx);
        pole = zenneck_wavenumber(complex_permittivity(water, ctx), ctx.k0());
    }
    const SurfaceWaveParams sw = surface_wave_params(ctx.lambda0(), eps_im);
    const auto convention = a.power_db ? DbConvention::Power : DbConvention::Field;
    const double depth = depth_at_level(a.level_db, sw.L_z, convention);
    const char* note = "eps_im derived from conductivity; the 60 m surface-wave length often quoted at 50 MHz "
                       "corresponds to eps_im ~ 31.4, not to this value (see README)";

    if (a.json) {
        json j;
        j["freq_hz"] = a.freq;
        if (a.eps_im) {
            j["eps_im_input"] = *a.eps_im;
        } else {
            j["eps_real"] = *a.eps_real;
            if (a.sigma)
                j["sigma_s_per_m"] = *a.sigma;
            else
                j["salinity_percent"] = *a.salinity;
        }
        j["level_db"] = a.level_db;
        j["db_convention"] = a.power_db ? "power" : "field";
        j["lambda0_m"] = round6(sw.lambda0);
        j["eps_im"] = round6(eps_im);
        j["L_z_m"] = round6(sw.L_z);
        j["L_r_m"] = round6(sw.L_r);
        j["depth_at_level_m"] = round6(depth);
        if (pole) {
            j["L_r_pole_m"] = round6(pole->propagation_length);
            j["note"] = note;
        }
        std::cout << j.dump(2) << '\n';
        return;
    }
    print_kv("lambda0_m", sw.lambda0);
    print_kv("eps_im", eps_im);
    print_kv("L_z_m", sw.L_z);
    print_kv("L_r_m", sw.L_r);
    print_kv("level_db", a.level_db);
    print_kv("depth_at_level_m", depth);
    if (pole) {
        print_kv("L_r_pole_m", pole->propagation_length);
        std::cout << "# note: " << note << '\n';
    }
}

struct FieldMapArgs {
    std::string scenario, out;
    double rel_tol = 1e-8;
    unsigned threads = 0;
};

void run_field_map(const FieldMapArgs& a)
{
    const Scenario sc = load_scenario(a.scenario);
    const HalfSpaceProblem problem = sc.halfspace();
    QuadratureConfig cfg;
    cfg.rel_tol = a.rel_tol;
    const auto ranges = sc.ranges();
    const auto depths = sc.depths();
    const FieldMap map = field_map(problem, ranges, depths, cfg, a.threads);

    CsvSink sink(a.out);
    auto& os = sink.stream();
    os << "range_m,depth_m,magnitude_db\n";
    for (std::size_t ir = 0; ir < ranges.size(); ++ir)
        for (std::size_t id = 0; id < depths.size(); ++id)
            os << fmt6(ranges[ir]) << ',' << fmt6(depths[id]) << ',' << fmt6(map.at(ir, id)) << '\n';
    if (map.failures > 0)
        std::cerr << "warning: " << map.failures << " grid point(s) failed and were left empty\n";
}

struct LinkMapArgs {
    std::string scenario, out;
};

void run_link_map(const LinkMapArgs& a)
{
    const Scenario sc = load_scenario(a.scenario);
    const LinkModelParams params = sc.link_params();
    const auto depths = sc.depths();
    const auto ranges = sc.ranges();
    const ProbabilityGrid grid = probability_grid(depths, ranges, params);

    CsvSink sink(a.out);
    auto& os = sink.stream();
    os << "depth_m,range_m,probability\n";
    for (std::size_t i = 0; i < depths.size(); ++i)
        for (std::size_t jx = 0; jx < ranges.size(); ++jx)
            os << fmt6(depths[i]) << ',' << fmt6(ranges[jx]) << ',' << fmt6(grid.at(i, jx)) << '\n';
}

struct FitArgs {
    std::string trials, scenario;
    std::vector<std::string> free, bounds, fixed;
};

std::pair<std::string, std::string> split_assignment(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw DomainError("expected name=value, got '" + text + "'");
    return {text.substr(0, eq), text.substr(eq + 1)};
}

double to_double(const std::string& text)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty())
        throw DomainError("not a number: '" + text + "'");
    return v;
}

void run_fit(const FitArgs& a)
{
    const auto records = load_trial_csv(a.trials);
    LinkModelParams fixed = a.scenario.empty() ? LinkModelParams{} : load_scenario(a.scenario).link_params();
    for (const auto& item : a.fixed) {
        const auto [name, value] = split_assignment(item);
        const double v = to_double(value);
        const std::map<std::string, double*> slots{
            {"L_r", &fixed.L_r},           {"L_z", &fixed.L_z},
            {"delta", &fixed.delta},       {"coupling_db", &fixed.coupling_db},
            {"threshold_db", &fixed.threshold_db}, {"sigma_fade_db", &fixed.sigma_fade_db},
            {"r0", &fixed.r0}};
        const auto it = slots.find(name);
        if (it == slots.end())
            throw DomainError("unknown fixed parameter '" + name + "'");
        *it->second = v;
    }

    std::vector<FreeParameter> free;
    for (const auto& name : a.free) {
        const auto which = parse_fit_parameter(name);
        if (!which)
            throw DomainError("unknown free parameter '" + name + "' (use L_r, L_z, coupling_db, sigma_fade_db)");
        free.push_back(default_bounds(*which));
    }
    for (const auto& item : a.bounds) {
        const auto [name, range] = split_assignment(item);
        const auto colon = range.find(':');
        if (colon == std::string::npos)
            throw DomainError("bounds must look like name=lo:hi");
        const auto which = parse_fit_parameter(name);
        auto it = std::find_if(free.begin(), free.end(), [&](const auto& f) { return which && f.which == *which; });
        if (it == free.end())
            throw DomainError("bounds given for '" + name + "', which is not free");
        it->lower = to_double(range.substr(0, colon));
        it->upper = to_double(range.substr(colon + 1));
    }

    const FitResult r = fit_parameters(records, fixed, free);
    json j;
    j["records"] = records.size();
    j["free"] = a.free;
    j["params"] = {{"L_r", round6(r.params.L_r)},
                   {"L_z", round6(r.params.L_z)},
                   {"delta", round6(r.params.delta)},
                   {"coupling_db", round6(r.params.coupling_db)},
                   {"threshold_db", round6(r.params.threshold_db)},
                   {"sigma_fade_db", round6(r.params.sigma_fade_db)},
                   {"r0", round6(r.params.r0)}};
    j["objective"] = round6(r.objective);
    j["grid_points"] = r.grid_points;
    j["iterations"] = r.iterations;
    std::cout << j.dump(2) << '\n';
}

struct SimulateArgs {
    std::optional<double> prob;
    std::string scenario;
    std::optional<double> depth, range;
    int attempts = 10;
    std::optional<std::uint64_t> seed;
    bool json = false;
};

void run_simulate(const SimulateArgs& a)
{
    double prob = 0.0;
    std::uint64_t seed = a.seed.value_or(0);
    if (a.prob) {
        prob = *a.prob;
    } else {
        if (a.scenario.empty() || !a.depth || !a.range)
            throw DomainError("give --prob, or --scenario with --depth and --range");
        const Scenario sc = load_scenario(a.scenario);
        const LinkModelParams params = sc.link_params();
        prob = link_probability(two_path_gain({*a.depth, *a.depth, *a.range}, params), params);
        if (!a.seed)
            seed = sc.seed.value_or(0);
    }
    const TrialOutcome t = simulate_trials(prob, a.attempts, seed);
    if (a.json) {
        json j;
        if (a.prob)
            j["prob"] = *a.prob;
        else {
            j["scenario"] = a.scenario;
            j["depth_m"] = *a.depth;
            j["range_m"] = *a.range;
            j["prob"] = round6(prob);
        }
        j["attempts"] = t.attempts;
        j["seed"] = seed;
        j["successes"] = t.successes;
        j["p_hat"] = round6(t.p_hat);
        std::cout << j.dump(2) << '\n';
        return;
    }
    if (!a.prob)
        print_kv("prob", prob);
    std::cout << "attempts = " << t.attempts << '\n' << "successes = " << t.successes << '\n';
    print_kv("p_hat", t.p_hat);
}

struct AntennaArgs {
    double f_air = 450e6;
    double eps_r = 81.0;
    bool reference = false;
    bool json = false;
};

void run_antenna_scale(const AntennaArgs& a)
{
    const double f = resonance_in_medium(a.f_air, a.eps_r);
    const double factor = size_reduction_factor(a.eps_r);
    const AntennaRecord ref = reference_helix();
    const EnclosureMeasurement meas;
    if (a.json) {
        json j;
        j["f_air_hz"] = a.f_air;
        j["eps_r"] = a.eps_r;
        j["f_medium_hz"] = round6(f);
        j["size_factor"] = round6(factor);
        if (a.reference) {
            j["reference_helix"] = {{"f_air_hz", ref.f_air},
                                    {"eps_r", ref.eps_r},
                                    {"length_m", ref.length},
                                    {"diameter_m", ref.diameter},
                                    {"notes", ref.notes}};
            j["enclosure_measurement"] = {{"freq_hz", meas.freq_hz},
                                          {"salinity_percent", meas.salinity_percent},
                                          {"advantage_db", meas.advantage_db},
                                          {"label", meas.label}};
        }
        std::cout << j.dump(2) << '\n';
        return;
    }
    print_kv("f_medium_hz", f);
    print_kv("size_factor", factor);
    if (a.reference) {
        print_kv("reference_length_m", ref.length);
        print_kv("reference_diameter_m", ref.diameter);
        print_kv("reference_free_space_length_m", ref.length * size_reduction_factor(ref.eps_r));
        std::cout << "# reference: " << ref.notes << '\n';
        std::cout << "# " << meas.label << ": " << fmt6(meas.advantage_db) << " dB at " << fmt6(meas.freq_hz)
                  << " Hz, " << fmt6(meas.salinity_percent) << " % salinity\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Surface-wave underwater radio link toolkit"};
    app.require_subcommand(1);

    SkinDepthArgs sd;
    auto* c_sd = app.add_subcommand("skin-depth", "Plane-wave skin depth and its frequency-free constant");
    c_sd->add_option("--freq", sd.freq, "Frequency, Hz")->required();
    auto* sd_sigma = c_sd->add_option("--sigma", sd.sigma, "Conductivity, S/m");
    auto* sd_sal = c_sd->add_option("--salinity", sd.salinity, "Salinity, percent (rough linear map)");
    sd_sigma->excludes(sd_sal);
    c_sd->add_flag("--json", sd.json);

    SurfaceArgs sp;
    auto* c_sp = app.add_subcommand("surface-params", "Surface-wave penetration depth and propagation length");
    c_sp->add_option("--freq", sp.freq, "Frequency, Hz")->required();
    auto* sp_im = c_sp->add_option("--eps-im", sp.eps_im, "Imaginary part of the relative permittivity");
    auto* sp_re = c_sp->add_option("--eps-real", sp.eps_real, "Real relative permittivity");
    auto* sp_sigma = c_sp->add_option("--sigma", sp.sigma, "Conductivity, S/m");
    auto* sp_sal = c_sp->add_option("--salinity", sp.salinity, "Salinity, percent");
    sp_im->excludes(sp_re)->excludes(sp_sigma)->excludes(sp_sal);
    sp_sigma->excludes(sp_sal);
    c_sp->add_option("--level-db", sp.level_db, "Level for the depth estimate, dB (<= 0)");
    c_sp->add_flag("--power-db", sp.power_db, "Read the level as power dB with L_z an intensity length");
    c_sp->add_flag("--json", sp.json);

    FieldMapArgs fm;
    auto* c_fm = app.add_subcommand("field-map", "Dipole field map near the air/water interface (CSV)");
    c_fm->add_option("scenario", fm.scenario, "Scenario file")->required();
    c_fm->add_option("--out", fm.out, "Output CSV path (default stdout)");
    c_fm->add_option("--rel-tol", fm.rel_tol, "Quadrature relative tolerance");
    c_fm->add_option("--threads", fm.threads, "Worker threads (0 = all cores)");

    LinkMapArgs lm;
    auto* c_lm = app.add_subcommand("link-map", "Link probability over depth and range (CSV)");
    c_lm->add_option("scenario", lm.scenario, "Scenario file")->required();
    c_lm->add_option("--out", lm.out, "Output CSV path (default stdout)");

    FitArgs ft;
    auto* c_ft = app.add_subcommand("fit", "Fit effective link parameters to trial records (JSON)");
    c_ft->add_option("trials", ft.trials, "Trial CSV")->required();
    c_ft->add_option("--free", ft.free, "Free parameters: L_r, L_z, coupling_db, sigma_fade_db")
        ->required()
        ->delimiter(',');
    c_ft->add_option("--bounds", ft.bounds, "Search interval, name=lo:hi (repeatable)");
    c_ft->add_option("--fixed", ft.fixed, "Fixed parameter value, name=value (repeatable)");
    c_ft->add_option("--scenario", ft.scenario, "Scenario file supplying fixed parameters");

    SimulateArgs sm;
    auto* c_sm = app.add_subcommand("simulate", "Simulate PTT link trials");
    auto* sm_prob = c_sm->add_option("--prob", sm.prob, "Link probability per attempt");
    auto* sm_sc = c_sm->add_option("--scenario", sm.scenario, "Scenario file for a model cell");
    sm_prob->excludes(sm_sc);
    c_sm->add_option("--depth", sm.depth, "Diver depth for the scenario cell, m");
    c_sm->add_option("--range", sm.range, "Diver separation for the scenario cell, m");
    c_sm->add_option("--attempts", sm.attempts, "Number of attempts");
    c_sm->add_option("--seed", sm.seed, "Generator seed");
    c_sm->add_flag("--json", sm.json);

    AntennaArgs an;
    auto* c_an = app.add_subcommand("antenna-scale", "Dielectric loading scaling for the helical monopole");
    c_an->add_option("--f-air", an.f_air, "Free-space resonance, Hz");
    c_an->add_option("--eps-r", an.eps_r, "Relative permittivity of the loading medium");
    c_an->add_flag("--reference", an.reference, "Also print the reference antenna record");
    c_an->add_flag("--json", an.json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitDomain;
    }

    try {
        if (c_sd->parsed()) {
            if (!sd.sigma && !sd.salinity)
                throw DomainError("give --sigma or --salinity");
            run_skin_depth(sd);
        } else if (c_sp->parsed()) {
            run_surface_params(sp);
        } else if (c_fm->parsed()) {
            run_field_map(fm);
        } else if (c_lm->parsed()) {
            run_link_map(lm);
        } else if (c_ft->parsed()) {
            run_fit(ft);
        } else if (c_sm->parsed()) {
            run_simulate(sm);
        } else if (c_an->parsed()) {
            run_antenna_scale(an);
        }
    } catch (const UnidentifiableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnidentifiable;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const MapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
