#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "levy_scl/entropy_tools.hpp"
#include "levy_scl/errors.hpp"
#include "levy_scl/estimators.hpp"
#include "levy_scl/experiments.hpp"
#include "levy_scl/levy_noise.hpp"
#include "levy_scl/presets.hpp"
#include "levy_scl/solvers.hpp"

namespace py = pybind11;
using namespace levy_scl;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Field field_from(const Grid1D& g, py::array_t<double, py::array::c_style | py::array::forcecast> values) {
    if (values.ndim() != 1) throw ArgumentError("field values must be one-dimensional");
    return Field(g, std::vector<double>(values.data(), values.data() + values.size()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Scalar conservation laws with Levy jump noise";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    // grids and fields
    py::class_<Grid1D>(m, "Grid1D")
        .def(py::init<double, double, std::size_t>(), py::arg("x_min"), py::arg("x_max"), py::arg("n_cells"))
        .def_property_readonly("x_min", &Grid1D::x_min)
        .def_property_readonly("x_max", &Grid1D::x_max)
        .def_property_readonly("n_cells", &Grid1D::n_cells)
        .def_property_readonly("dx", &Grid1D::dx)
        .def("centers", [](const Grid1D& g) {
            std::vector<double> c(g.n_cells());
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = g.center(i);
            return to_array(c);
        });

    py::class_<Field>(m, "Field")
        .def(py::init(&field_from), py::arg("grid"), py::arg("values"))
        .def(py::init<Grid1D, double>(), py::arg("grid"), py::arg("value") = 0.0)
        .def_static("sample", &Field::sample, py::arg("grid"), py::arg("f"))
        .def_property_readonly("grid", &Field::grid)
        .def_property_readonly("values", [](const Field& f) { return to_array(f.values()); })
        .def("mass", &Field::mass)
        .def("min", &Field::min)
        .def("max", &Field::max)
        .def("__len__", &Field::size);

    // fluxes, coefficients, measures
    py::class_<FluxModel>(m, "FluxModel")
        .def_readonly("name", &FluxModel::name)
        .def_readonly("convex", &FluxModel::convex)
        .def("__call__", [](const FluxModel& f, double u) { return f.F(u); })
        .def("derivative", [](const FluxModel& f, double u) { return f.F_prime(u); });
    m.def("zero_flux", &zero_flux);
    m.def("linear_flux", &linear_flux, py::arg("speed"));
    m.def("burgers_flux", &burgers_flux, py::arg("shift") = 0.0);
    m.def(
        "make_flux",
        [](const std::string& kind, const std::map<std::string, double>& params) { return make_flux({kind, params}); },
        py::arg("kind"), py::arg("params") = std::map<std::string, double>{});
    m.def(
        "make_initial_field",
        [](const Grid1D& g, const std::string& kind, const std::map<std::string, double>& params) {
            return make_initial_field(g, {kind, params});
        },
        py::arg("grid"), py::arg("kind"), py::arg("params") = std::map<std::string, double>{});

    py::class_<JumpCoefficient>(m, "JumpCoefficient")
        .def("__call__", &JumpCoefficient::operator(), py::arg("x"), py::arg("u"), py::arg("z"))
        .def_readonly("identically_zero", &JumpCoefficient::identically_zero);
    m.def("zero_coefficient", &zero_coefficient);
    m.def("linear_coefficient", &linear_coefficient, py::arg("scale"));
    m.def("bump_coefficient", &bump_coefficient, py::arg("scale"), py::arg("center") = 0.0, py::arg("width") = 1.0,
          py::arg("state_bound") = 10.0);

    py::class_<LevyMeasureSpec>(m, "LevyMeasure");
    m.def(
        "make_atomic",
        [](const std::vector<std::pair<double, double>>& atoms, double cut) {
            std::vector<Atom> a;
            for (const auto& [mark, weight] : atoms) a.push_back({mark, weight});
            return make_atomic(std::move(a), cut);
        },
        py::arg("atoms"), py::arg("cut"));
    m.def("make_power_law", &make_power_law, py::arg("alpha"), py::arg("scale"), py::arg("z_max"),
          py::arg("two_sided"), py::arg("cut"));
    m.def("truncated_intensity", &truncated_intensity, py::arg("measure"), py::arg("cut"));
    m.def(
        "integrate_measure",
        [](const LevyMeasureSpec& measure, double cut, const std::function<double(double)>& f) {
            return integrate_measure(measure, cut, f);
        },
        py::arg("measure"), py::arg("cut"), py::arg("f"));

    py::class_<JumpPath>(m, "JumpPath")
        .def(py::init([](double horizon, double cut, const std::vector<std::pair<double, double>>& events) {
                 std::vector<JumpEvent> ev;
                 for (const auto& [t, z] : events) ev.push_back({t, z});
                 return JumpPath(horizon, cut, std::move(ev));
             }),
             py::arg("horizon"), py::arg("cut"), py::arg("events") = std::vector<std::pair<double, double>>{})
        .def_property_readonly("horizon", &JumpPath::horizon)
        .def_property_readonly("cut", &JumpPath::cut)
        .def_property_readonly("events", [](const JumpPath& p) {
            std::vector<std::pair<double, double>> out;
            for (const auto& e : p.events()) out.emplace_back(e.time, e.mark);
            return out;
        });
    m.def(
        "sample_path",
        [](const LevyMeasureSpec& measure, double cut, double horizon, std::uint64_t seed, std::uint64_t path_index) {
            Rng rng = SeedDerivation(seed).stream(path_index, StreamPurpose::jump_path);
            return sample_path(measure, cut, horizon, rng);
        },
        py::arg("measure"), py::arg("cut"), py::arg("horizon"), py::arg("seed"), py::arg("path_index") = 0);

    // solver
    py::enum_<NumericalFlux>(m, "NumericalFlux")
        .value("engquist_osher", NumericalFlux::engquist_osher)
        .value("godunov", NumericalFlux::godunov)
        .value("lax_friedrichs", NumericalFlux::lax_friedrichs);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &SolverConfig::epsilon)
        .def_readwrite("cfl", &SolverConfig::cfl)
        .def_readwrite("scheme", &SolverConfig::scheme)
        .def_readwrite("snapshot_times", &SolverConfig::snapshot_times)
        .def_readwrite("max_dt", &SolverConfig::max_dt)
        .def_readwrite("record_jumps", &SolverConfig::record_jumps);

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("times",
                               [](const Trajectory& t) {
                                   std::vector<double> out;
                                   for (const auto& s : t.snapshots) out.push_back(s.time);
                                   return out;
                               })
        .def_property_readonly("fields",
                               [](const Trajectory& t) {
                                   std::vector<Field> out;
                                   for (const auto& s : t.snapshots) out.push_back(s.field);
                                   return out;
                               })
        .def_property_readonly("final_field", &Trajectory::final_field)
        .def_property_readonly("n_jumps", [](const Trajectory& t) { return t.jumps.size(); })
        .def("to_csv", [](const Trajectory& t) {
            std::ostringstream os;
            write_snapshots_csv(os, t);
            return os.str();
        });

    m.def("solve", &solve, py::arg("u0"), py::arg("flux"), py::arg("coeff"), py::arg("measure"), py::arg("config"),
          py::arg("path"), py::call_guard<py::gil_scoped_release>());
    m.def("heat_kernel_solution", &heat_kernel_solution, py::arg("u0"), py::arg("epsilon"), py::arg("t"));

    // entropy tools
    py::class_<EntropyFamily>(m, "EntropyFamily")
        .def(py::init<double>(), py::arg("xi"))
        .def_property_readonly("xi", &EntropyFamily::xi)
        .def_readonly_static("M1", &EntropyFamily::M1)
        .def_readonly_static("M2", &EntropyFamily::M2)
        .def("beta", &EntropyFamily::beta)
        .def("beta_prime", &EntropyFamily::beta_prime)
        .def("beta_second", &EntropyFamily::beta_second)
        .def("bregman", &EntropyFamily::bregman, py::arg("r"), py::arg("eta"));
    m.def("kruzkov_flux", &kruzkov_flux, py::arg("flux"), py::arg("a"), py::arg("b"));
    m.def(
        "entropy_flux_beta",
        [](const FluxModel& flux, const EntropyFamily& fam, double a, double b) {
            return entropy_flux_beta({flux, fam}, a, b);
        },
        py::arg("flux"), py::arg("family"), py::arg("a"), py::arg("b"));
    m.def("ito_correction", &ito_correction, py::arg("family"), py::arg("coeff"), py::arg("measure"), py::arg("x"),
          py::arg("u"), py::arg("k") = 0.0, py::arg("cut") = 0.0);
    m.def(
        "noise_distance",
        [](const JumpCoefficient& eta, const JumpCoefficient& sigma, const LevyMeasureSpec& measure, double u_lo,
           double u_hi, std::size_t n_u) {
            const auto d = noise_distance(eta, sigma, measure, u_lo, u_hi, n_u);
            return std::make_pair(d.value, d.argmax_u);
        },
        py::arg("eta"), py::arg("sigma"), py::arg("measure"), py::arg("u_lo") = -8.0, py::arg("u_hi") = 8.0,
        py::arg("n_u") = 1601);

    // estimators
    py::class_<WeightPhi>(m, "WeightPhi")
        .def(py::init([](double radius, double decay) { return WeightPhi{radius, decay}; }), py::arg("radius") = 1.0,
             py::arg("decay") = 1.0)
        .def("__call__", &WeightPhi::operator())
        .def("l1_norm", &WeightPhi::l1_norm);
    m.def("bv_seminorm", &bv_seminorm, py::arg("f"));
    m.def("lp_norm", &lp_norm, py::arg("f"), py::arg("p"));
    m.def("weighted_l1_distance", &weighted_l1_distance, py::arg("f"), py::arg("g"), py::arg("phi") = py::none());
    m.def("besov_seminorm", &besov_seminorm, py::arg("f"), py::arg("mu"), py::arg("delta_max"));
    m.def(
        "fit_rate",
        [](const std::vector<std::pair<double, double>>& points) {
            std::vector<RatePoint> pts;
            for (const auto& [h, e] : points) pts.push_back({h, e});
            const auto fit = fit_rate(pts);
            return std::make_tuple(fit.slope, fit.intercept, fit.residual);
        },
        py::arg("points"));

    // configs and experiments
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_property_readonly("kind", [](const ExperimentConfig& c) { return to_string(c.kind); })
        .def_readwrite("paths", &ExperimentConfig::paths)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("threads", &ExperimentConfig::threads)
        .def_readwrite("n_cells", &ExperimentConfig::n_cells)
        .def_readwrite("horizon", &ExperimentConfig::horizon)
        .def_readwrite("eps_list", &ExperimentConfig::eps_list)
        .def("snapshot_times", &ExperimentConfig::snapshot_times)
        .def("__eq__", [](const ExperimentConfig& a, const ExperimentConfig& b) { return a == b; })
        .def("__str__", &serialize_config);
    m.def("parse_config", &parse_config, py::arg("path"));
    m.def("parse_config_text", &parse_config_text, py::arg("text"), py::arg("source") = "<config>");
    m.def("serialize_config", &serialize_config, py::arg("config"));
    m.def("validate_config", py::overload_cast<const ExperimentConfig&>(&validate), py::arg("config"));
    m.def("config_schema", &config_schema);

    py::class_<ReportRow>(m, "ReportRow")
        .def_readonly("stat_name", &ReportRow::stat_name)
        .def_readonly("param_name", &ReportRow::param_name)
        .def_readonly("param_value", &ReportRow::param_value)
        .def_readonly("time", &ReportRow::time)
        .def_property_readonly("value", [](const ReportRow& r) { return r.stat.mean; })
        .def_property_readonly("std_error", [](const ReportRow& r) { return r.stat.std_error; })
        .def_property_readonly("n_samples", [](const ReportRow& r) { return r.stat.n_samples; });

    py::class_<Verdict>(m, "Verdict")
        .def_readonly("name", &Verdict::name)
        .def_readonly("passed", &Verdict::passed)
        .def_readonly("measured", &Verdict::measured)
        .def_readonly("lower", &Verdict::lower)
        .def_readonly("upper", &Verdict::upper)
        .def_readonly("detail", &Verdict::detail);

    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_property_readonly("kind", [](const ExperimentReport& r) { return to_string(r.kind); })
        .def_readonly("rows", &ExperimentReport::rows)
        .def_readonly("verdicts", &ExperimentReport::verdicts)
        .def_readonly("notes", &ExperimentReport::notes)
        .def("passed", &ExperimentReport::passed)
        .def("report_csv",
             [](const ExperimentReport& r) {
                 std::ostringstream os;
                 write_report_csv(os, r);
                 return os.str();
             })
        .def("summary", [](const ExperimentReport& r) {
            std::ostringstream os;
            write_summary(os, r);
            return os.str();
        });
    m.def("run_experiment", &run_experiment, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("emit_report", &emit_report, py::arg("report"), py::arg("out_dir"));
}
