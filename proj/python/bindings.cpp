#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "softextrap/bounds.hpp"
#include "softextrap/errors.hpp"
#include "softextrap/experiment.hpp"
#include "softextrap/fitting.hpp"
#include "softextrap/io.hpp"
#include "softextrap/potential.hpp"
#include "softextrap/scalars.hpp"

namespace py = pybind11;
using namespace softextrap;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Soft extrapolation of entire functions from windowed noisy samples";

    auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NoExtrapolationError>(m, "NoExtrapolationError", domain_error.ptr());
    py::register_exception<GridError>(m, "GridError", domain_error.ptr());
    py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);

    py::class_<ProblemParams>(m, "ProblemParams")
        .def(py::init([](double alpha, double tau, double lambda) { return ProblemParams{alpha, tau, lambda}; }),
             py::arg("alpha") = 2.0, py::arg("tau") = 1.0, py::arg("lambda_") = 1.0)
        .def_readwrite("alpha", &ProblemParams::alpha)
        .def_readwrite("tau", &ProblemParams::tau)
        .def_readwrite("lambda_", &ProblemParams::lambda)
        .def("validate", &ProblemParams::validate);

    py::enum_<Pipeline>(m, "Pipeline").value("generic", Pipeline::generic).value("hermite", Pipeline::hermite);

    py::class_<DegreePlan>(m, "DegreePlan")
        .def_readonly("params", &DegreePlan::params)
        .def_readonly("pipeline", &DegreePlan::pipeline)
        .def_readonly("eps", &DegreePlan::eps)
        .def_readonly("q", &DegreePlan::q)
        .def_readonly("n", &DegreePlan::n)
        .def_readonly("a_n", &DegreePlan::a_n)
        .def_readonly("r_n", &DegreePlan::r_n)
        .def_readonly("rho", &DegreePlan::rho)
        .def_readonly("mu", &DegreePlan::mu)
        .def_readonly("beta_alpha", &DegreePlan::beta_alpha)
        .def_readonly("robin", &DegreePlan::robin)
        .def_property_readonly("window_edge", &DegreePlan::window_edge)
        .def_property_readonly("forbidden_radius", &DegreePlan::forbidden_radius)
        .def("to_json", [](const DegreePlan& p) { return plan_to_json(p); });

    m.def("lambert_w", &lambert_w, py::arg("x"));
    m.def("beta_alpha", &beta_alpha, py::arg("alpha"));
    m.def("robin_constant", &robin_constant, py::arg("alpha"));
    m.def("q_of_eps", &q_of_eps, py::arg("params"), py::arg("eps"));
    m.def("degree_plan", &degree_plan, py::arg("params"), py::arg("eps"));
    m.def("hermite_plan", &hermite_plan, py::arg("tau"), py::arg("eps"));

    m.def("ullman_density", &ullman_density, py::arg("alpha"), py::arg("t"));
    m.def("log_potential", &log_potential, py::arg("alpha"), py::arg("z"));
    m.def("delta", &delta, py::arg("alpha"), py::arg("z"));
    m.def("delta_alpha2", &delta_alpha2, py::arg("z"));

    py::class_<SampleSet>(m, "SampleSet")
        .def(py::init([](std::vector<double> x, std::vector<double> g, double alpha) {
                 SampleSet s = SampleSet::from_unsorted(std::move(x), std::move(g), alpha);
                 s.validate();
                 return s;
             }),
             py::arg("x"), py::arg("g"), py::arg("alpha") = 2.0)
        .def_readonly("nodes", &SampleSet::nodes)
        .def_readonly("values", &SampleSet::values)
        .def_readonly("alpha", &SampleSet::alpha);

    py::class_<GridReport>(m, "GridReport")
        .def_readonly("extent_ok", &GridReport::extent_ok)
        .def_readonly("density_ok", &GridReport::density_ok)
        .def_readonly("max_gap", &GridReport::max_gap)
        .def_readonly("required_gap", &GridReport::required_gap)
        .def_property_readonly("ok", &GridReport::ok);

    py::class_<FittedModel>(m, "FittedModel")
        .def_readonly("coefficients", &FittedModel::coefficients)
        .def_readonly("plan", &FittedModel::plan)
        .def_property_readonly("degree", &FittedModel::degree)
        .def("__call__", [](const FittedModel& model, std::complex<double> z) { return evaluate(model, z); })
        .def("to_json", [](const FittedModel& model) { return model_to_json(model); })
        .def_static("from_json", &model_from_json);

    py::class_<ExtrapolationResult>(m, "ExtrapolationResult")
        .def_readonly("model", &ExtrapolationResult::model)
        .def_readonly("plan", &ExtrapolationResult::plan)
        .def_readonly("report", &ExtrapolationResult::report);

    m.def("build_grid", &build_grid, py::arg("plan"), py::arg("oversampling") = 2.0);
    m.def(
        "fit",
        [](const SampleSet& samples, const DegreePlan& plan, double density_constant, bool allow_invalid_grid) {
            return fit(samples, plan, FitOptions{density_constant, allow_invalid_grid});
        },
        py::arg("samples"), py::arg("plan"), py::arg("density_constant") = kDefaultDensityConstant,
        py::arg("allow_invalid_grid") = false);
    m.def(
        "extrapolate",
        [](const SampleSet& samples, const ProblemParams& params, double eps, Pipeline pipeline) {
            ExtrapolationOptions options;
            options.pipeline = pipeline;
            return extrapolate(samples, params, eps, options);
        },
        py::arg("samples"), py::arg("params"), py::arg("eps"), py::arg("pipeline") = Pipeline::generic);

    py::enum_<Region>(m, "Region")
        .value("approximation", Region::approximation)
        .value("extrapolation", Region::extrapolation)
        .value("forbidden", Region::forbidden);

    py::class_<BoundProfile>(m, "BoundProfile")
        .def(py::init<DegreePlan>(), py::arg("plan"))
        .def("classify", &BoundProfile::classify)
        .def("envelope", &BoundProfile::envelope);

    py::class_<RegionThresholds>(m, "RegionThresholds")
        .def_readonly("log_eps_12", &RegionThresholds::log_eps_12)
        .def_readonly("log_eps_23", &RegionThresholds::log_eps_23)
        .def_property_readonly("eps_12", &RegionThresholds::eps_12)
        .def_property_readonly("eps_23", &RegionThresholds::eps_23);
    m.def(
        "region_thresholds",
        [](double z0, double tau) { return region_thresholds(z0, ProblemParams{2.0, tau, 1.0}); }, py::arg("z0"),
        py::arg("tau"));

    py::class_<CoefficientCheck>(m, "CoefficientCheck")
        .def_readonly("compared", &CoefficientCheck::compared)
        .def_readonly("max_relative_discrepancy", &CoefficientCheck::max_relative_discrepancy)
        .def_readonly("ratio", &CoefficientCheck::ratio)
        .def_readonly("uses_projection", &CoefficientCheck::uses_projection);

    py::class_<DarkObject>(m, "DarkObject")
        .def(py::init<double, int>(), py::arg("tau"), py::arg("n"))
        .def(py::init<double, const DegreePlan&>(), py::arg("tau"), py::arg("plan"))
        .def_property_readonly("degree", &DarkObject::degree)
        .def_property_readonly("coefficients", &DarkObject::coefficients)
        .def_property_readonly("check", &DarkObject::check)
        .def("__call__", &DarkObject::operator());

    m.def("model_function_f_tau", py::overload_cast<double, std::complex<double>>(&model_function_f_tau),
          py::arg("tau"), py::arg("x"));
    m.def(
        "run_pointwise_experiment",
        [](double tau, double eps, int trials, std::uint64_t seed, std::optional<double> noise_bound) {
            ExperimentConfig config;
            config.tau = tau;
            config.eps = eps;
            config.trials = trials;
            config.seed = seed;
            config.noise_bound = noise_bound;
            std::ostringstream csv;
            write_pointwise_csv(csv, run_pointwise_experiment(config));
            return csv.str();
        },
        py::arg("tau") = 0.3, py::arg("eps") = 1e-5, py::arg("trials") = 50, py::arg("seed") = 7,
        py::arg("noise_bound") = py::none(), "Returns the CSV table as text.");
    m.def(
        "run_eps_sweep",
        [](double tau, double z0, std::vector<double> eps_list, int trials, std::uint64_t seed) {
            SweepConfig config;
            config.tau = tau;
            config.z0 = z0;
            config.eps_list = std::move(eps_list);
            config.trials = trials;
            config.seed = seed;
            std::ostringstream csv;
            write_sweep_csv(csv, run_eps_sweep(config));
            return csv.str();
        },
        py::arg("tau"), py::arg("z0"), py::arg("eps_list"), py::arg("trials") = 20, py::arg("seed") = 7,
        "Returns the CSV table as text.");
}
