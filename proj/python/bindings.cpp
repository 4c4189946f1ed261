#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "surflink/antenna.hpp"
#include "surflink/errors.hpp"
#include "surflink/halfspace.hpp"
#include "surflink/linkmodel.hpp"
#include "surflink/media.hpp"
#include "surflink/scenario.hpp"
#include "surflink/surfwave.hpp"

namespace py = pybind11;
using namespace surflink;

namespace {

py::dict grid_dict(const std::vector<double>& a, const char* a_name, const std::vector<double>& b, const char* b_name,
                   const std::vector<double>& values, const char* v_name)
{
    // nested lists indexed [i][j] over (a, b)
    std::vector<std::vector<double>> rows(a.size(), std::vector<double>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            rows[i][j] = values[i * b.size() + j];
    py::dict d;
    d[a_name] = a;
    d[b_name] = b;
    d[v_name] = rows;
    return d;
}

std::vector<FreeParameter> free_parameters(const std::vector<std::string>& names,
                                           const std::optional<py::dict>& bounds)
{
    std::vector<FreeParameter> out;
    for (const auto& name : names) {
        const auto which = parse_fit_parameter(name);
        if (!which)
            throw DomainError("unknown free parameter '" + name + "'");
        FreeParameter fp = default_bounds(*which);
        if (bounds && bounds->contains(name)) {
            const auto lohi = (*bounds)[py::str(name)].cast<std::pair<double, double>>();
            fp.lower = lohi.first;
            fp.upper = lohi.second;
        }
        out.push_back(fp);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Surface-wave underwater radio link toolkit";

    // Translators are tried newest first, so derived types are registered after their bases.
    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InfiniteSkinDepthError>(m, "InfiniteSkinDepthError", domain.ptr());
    py::register_exception<ParseError>(m, "ParseError", domain.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
    py::register_exception<UnidentifiableError>(m, "UnidentifiableError", PyExc_RuntimeError);
    py::register_exception<MapError>(m, "MapError", PyExc_RuntimeError);

    py::class_<Medium>(m, "Medium")
        .def(py::init<double, double, std::string>(), py::arg("eps_r") = 1.0, py::arg("sigma") = 0.0,
             py::arg("name") = "")
        .def_readwrite("eps_r", &Medium::eps_r)
        .def_readwrite("sigma", &Medium::sigma)
        .def_readwrite("name", &Medium::name)
        .def_static("air", &Medium::air)
        .def_static("vacuum", &Medium::vacuum)
        .def_static("seawater", &Medium::seawater)
        .def_static("pec", &Medium::pec)
        .def("__repr__", [](const Medium& md) {
            return "Medium(eps_r=" + std::to_string(md.eps_r) + ", sigma=" + std::to_string(md.sigma) + ", name='" +
                   md.name + "')";
        });

    m.def("loss_factor", [](const Medium& md, double freq) { return loss_factor(md, RfContext(freq)); },
          py::arg("medium"), py::arg("freq_hz"), "Imaginary part eps'' = sigma / (omega eps0).");
    m.def("skin_depth", &skin_depth, py::arg("sigma"), py::arg("freq_hz"));
    m.def("skin_depth_constant", &skin_depth_constant, py::arg("sigma"));
    m.def("salinity_to_conductivity", &salinity_to_conductivity, py::arg("salinity_percent"));

    m.def("penetration_depth", &penetration_depth, py::arg("lambda0"), py::arg("eps_im"));
    m.def("propagation_length", &propagation_length, py::arg("lambda0"), py::arg("eps_im"));
    m.def(
        "surface_wave_params",
        [](double lambda0, double eps_im) {
            const auto s = surface_wave_params(lambda0, eps_im);
            py::dict d;
            d["L_z"] = s.L_z;
            d["L_r"] = s.L_r;
            d["lambda0"] = s.lambda0;
            d["eps_im"] = s.eps_im;
            return d;
        },
        py::arg("lambda0"), py::arg("eps_im"));
    m.def(
        "zenneck_wavenumber",
        [](std::complex<double> eps, double k0) {
            const auto z = zenneck_wavenumber(eps, k0);
            py::dict d;
            d["k_rho"] = z.k_rho;
            d["k_z"] = z.k_z;
            d["propagation_length"] = z.propagation_length;
            d["water_decay_depth"] = z.water_decay_depth;
            return d;
        },
        py::arg("eps"), py::arg("k0"));
    m.def(
        "depth_at_level",
        [](double level_db, double L_z, bool power_db) {
            return depth_at_level(level_db, L_z, power_db ? DbConvention::Power : DbConvention::Field);
        },
        py::arg("level_db"), py::arg("L_z"), py::arg("power_db") = false);

    py::class_<HalfSpaceProblem>(m, "HalfSpaceProblem")
        .def(py::init([](const Medium& upper, const Medium& lower, double freq, double source_depth, double moment) {
                 HalfSpaceProblem p;
                 p.upper = upper;
                 p.lower = lower;
                 p.ctx = RfContext(freq);
                 p.source = {source_depth, moment};
                 p.validate();
                 return p;
             }),
             py::arg("upper") = Medium::air(), py::arg("lower") = Medium::seawater(), py::arg("freq_hz") = 50e6,
             py::arg("source_depth") = -0.5, py::arg("moment") = 1.0)
        .def_readonly("upper", &HalfSpaceProblem::upper)
        .def_readonly("lower", &HalfSpaceProblem::lower)
        .def_property_readonly("freq_hz", [](const HalfSpaceProblem& p) { return p.ctx.freq(); })
        .def_property_readonly("source_depth", [](const HalfSpaceProblem& p) { return p.source.depth; })
        .def("homogeneous", &HalfSpaceProblem::homogeneous);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init([](double rel_tol, int max_tail_intervals, int segment_points, bool spectral_direct) {
                 QuadratureConfig c{rel_tol, max_tail_intervals, segment_points, spectral_direct};
                 c.validate();
                 return c;
             }),
             py::arg("rel_tol") = 1e-8, py::arg("max_tail_intervals") = 60, py::arg("segment_points") = 15,
             py::arg("spectral_direct") = false)
        .def_readonly("rel_tol", &QuadratureConfig::rel_tol)
        .def_readonly("max_tail_intervals", &QuadratureConfig::max_tail_intervals)
        .def_readonly("segment_points", &QuadratureConfig::segment_points)
        .def_readonly("spectral_direct", &QuadratureConfig::spectral_direct);

    py::class_<FieldSample>(m, "FieldSample")
        .def_readonly("range", &FieldSample::range)
        .def_readonly("depth", &FieldSample::depth)
        .def_readonly("Ez", &FieldSample::Ez)
        .def_readonly("magnitude_db", &FieldSample::magnitude_db)
        .def_readonly("tail_intervals", &FieldSample::tail_intervals)
        .def_readonly("grazing_evaluations", &FieldSample::grazing_evaluations);

    m.def("field_at", &field_at, py::arg("problem"), py::arg("range"), py::arg("depth"),
          py::arg("config") = QuadratureConfig{}, py::call_guard<py::gil_scoped_release>());
    m.def(
        "field_map",
        [](const HalfSpaceProblem& p, const std::vector<double>& ranges, const std::vector<double>& depths,
           const QuadratureConfig& cfg, unsigned threads) {
            FieldMap fm;
            {
                py::gil_scoped_release release;
                fm = field_map(p, ranges, depths, cfg, threads);
            }
            auto d = grid_dict(fm.ranges, "ranges", fm.depths, "depths", fm.db, "db");
            d["failures"] = fm.failures;
            return d;
        },
        py::arg("problem"), py::arg("ranges"), py::arg("depths"), py::arg("config") = QuadratureConfig{},
        py::arg("threads") = 0u, "dB map normalised to its peak; db[i][j] is ranges[i], depths[j]; NaN marks failures.");

    py::class_<LinkModelParams>(m, "LinkModelParams")
        .def(py::init([](double L_z, double L_r, double delta, double coupling_db, double threshold_db,
                         double sigma_fade_db, double r0) {
                 LinkModelParams p{L_z, L_r, delta, coupling_db, threshold_db, sigma_fade_db, r0};
                 p.validate();
                 return p;
             }),
             py::arg("L_z") = 0.0851, py::arg("L_r") = 9.0, py::arg("delta") = 0.0382, py::arg("coupling_db") = 0.0,
             py::arg("threshold_db") = -115.0, py::arg("sigma_fade_db") = 6.0, py::arg("r0") = 1.0)
        .def_readwrite("L_z", &LinkModelParams::L_z)
        .def_readwrite("L_r", &LinkModelParams::L_r)
        .def_readwrite("delta", &LinkModelParams::delta)
        .def_readwrite("coupling_db", &LinkModelParams::coupling_db)
        .def_readwrite("threshold_db", &LinkModelParams::threshold_db)
        .def_readwrite("sigma_fade_db", &LinkModelParams::sigma_fade_db)
        .def_readwrite("r0", &LinkModelParams::r0);

    m.def(
        "path_levels",
        [](double tx_depth, double rx_depth, double range, const LinkModelParams& p) {
            const auto lv = path_levels({tx_depth, rx_depth, range}, p);
            return std::make_pair(lv.surface_db, lv.bulk_db);
        },
        py::arg("tx_depth"), py::arg("rx_depth"), py::arg("range"), py::arg("params") = LinkModelParams{},
        "(surface_db, bulk_db) before the coupling offset.");
    m.def(
        "two_path_gain",
        [](double tx_depth, double rx_depth, double range, const LinkModelParams& p) {
            return two_path_gain({tx_depth, rx_depth, range}, p);
        },
        py::arg("tx_depth"), py::arg("rx_depth"), py::arg("range"), py::arg("params") = LinkModelParams{});
    m.def("link_probability", &link_probability, py::arg("gain_db"), py::arg("params") = LinkModelParams{});
    m.def(
        "probability_grid",
        [](const std::vector<double>& depths, const std::vector<double>& ranges, const LinkModelParams& p) {
            const auto g = probability_grid(depths, ranges, p);
            return grid_dict(g.depths, "depths", g.ranges, "ranges", g.p, "p");
        },
        py::arg("depths"), py::arg("ranges"), py::arg("params") = LinkModelParams{});
    m.def(
        "simulate_trials",
        [](double prob, int attempts, std::uint64_t seed) {
            const auto t = simulate_trials(prob, attempts, seed);
            return std::make_pair(t.successes, t.p_hat);
        },
        py::arg("prob"), py::arg("attempts") = 10, py::arg("seed") = 0, "(successes, p_hat)");

    py::class_<TrialRecord>(m, "TrialRecord")
        .def(py::init([](double depth, double range, int attempts, int successes) {
                 TrialRecord r{depth, range, attempts, successes};
                 r.validate();
                 return r;
             }),
             py::arg("depth"), py::arg("range"), py::arg("attempts"), py::arg("successes"))
        .def_readonly("depth", &TrialRecord::depth)
        .def_readonly("range", &TrialRecord::range)
        .def_readonly("attempts", &TrialRecord::attempts)
        .def_readonly("successes", &TrialRecord::successes)
        .def("success_rate", &TrialRecord::success_rate);

    py::enum_<FitParameter>(m, "FitParameter")
        .value("L_r", FitParameter::L_r)
        .value("L_z", FitParameter::L_z)
        .value("coupling_db", FitParameter::coupling_db)
        .value("sigma_fade_db", FitParameter::sigma_fade_db);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("params", &FitResult::params)
        .def_readonly("objective", &FitResult::objective)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("grid_points", &FitResult::grid_points);

    m.def(
        "fit_parameters",
        [](const std::vector<TrialRecord>& records, const std::vector<std::string>& free, const LinkModelParams& fixed,
           const std::optional<py::dict>& bounds) {
            const auto fp = free_parameters(free, bounds);
            py::gil_scoped_release release;
            return fit_parameters(records, fixed, fp);
        },
        py::arg("records"), py::arg("free"), py::arg("fixed") = LinkModelParams{}, py::arg("bounds") = py::none(),
        "Least-squares fit; `bounds` maps a parameter name to (lower, upper).");

    m.def(
        "load_trial_csv", [](const std::string& path) { return load_trial_csv(path); }, py::arg("path"));
    m.def(
        "load_scenario",
        [](const std::string& path) {
            const Scenario s = load_scenario(path);
            py::dict d;
            d["freq_hz"] = s.frequency();
            d["sigma_s_per_m"] = s.conductivity();
            d["link_params"] = s.link_params();
            if (s.range_min_m && s.range_max_m && s.range_steps)
                d["ranges"] = s.ranges();
            if (s.depth_min_m && s.depth_max_m && s.depth_steps)
                d["depths"] = s.depths();
            d["halfspace"] = s.halfspace();
            if (s.seed)
                d["seed"] = *s.seed;
            return d;
        },
        py::arg("path"));

    m.def("resonance_in_medium", &resonance_in_medium, py::arg("f_air"), py::arg("eps_r"));
    m.def("size_reduction_factor", &size_reduction_factor, py::arg("eps_r"));
}
