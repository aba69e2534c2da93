#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rsbm/density.hpp"
#include "rsbm/errors.hpp"
#include "rsbm/exit.hpp"
#include "rsbm/potential.hpp"
#include "rsbm/presets.hpp"
#include "rsbm/risk.hpp"
#include "rsbm/sampler.hpp"
#include "rsbm/special.hpp"
#include "rsbm/stats.hpp"
#include "rsbm/validate.hpp"

namespace py = pybind11;
using namespace rsbm;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Refracted skew Brownian motion: densities, exits, fits and sampling.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UnsupportedRegime>(m, "UnsupportedRegime", PyExc_ValueError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double mu_minus, double mu_plus, double beta, double skew_level) {
             ModelParams p{mu_minus, mu_plus, beta, skew_level};
             p.validate();
             return p;
           }),
           py::arg("mu_minus"), py::arg("mu_plus"), py::arg("beta"), py::arg("skew_level") = 0.0)
      .def_readwrite("mu_minus", &ModelParams::mu_minus)
      .def_readwrite("mu_plus", &ModelParams::mu_plus)
      .def_readwrite("beta", &ModelParams::beta)
      .def_readwrite("skew_level", &ModelParams::skew_level)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(mu_minus=" + std::to_string(p.mu_minus) + ", mu_plus=" + std::to_string(p.mu_plus) +
               ", beta=" + std::to_string(p.beta) + ", skew_level=" + std::to_string(p.skew_level) + ")";
      });

  py::class_<QuadConfig>(m, "QuadConfig")
      .def(py::init<>())
      .def_readwrite("rel_tol", &QuadConfig::rel_tol)
      .def_readwrite("abs_tol", &QuadConfig::abs_tol)
      .def_readwrite("max_subdivisions", &QuadConfig::max_subdivisions);

  py::class_<Preset>(m, "Preset")
      .def_readonly("name", &Preset::name)
      .def_readonly("params", &Preset::params)
      .def_readonly("t", &Preset::t);
  m.def("preset", &preset, py::arg("name"));

  py::enum_<IntegralRoute>(m, "IntegralRoute")
      .value("kernel", IntegralRoute::kernel)
      .value("nested", IntegralRoute::nested);
  m.def("transition_density",
        py::overload_cast<double, double, double, const ModelParams&, const QuadConfig&, IntegralRoute>(
            &transition_density),
        py::arg("t"), py::arg("x"), py::arg("y"), py::arg("params"), py::arg("quad") = QuadConfig{},
        py::arg("route") = IntegralRoute::kernel);
  m.def("cdf", &cdf, py::arg("t"), py::arg("x"), py::arg("z"), py::arg("params"), py::arg("quad") = QuadConfig{});
  m.def("cdf_origin", &cdf_origin, py::arg("t"), py::arg("z"), py::arg("params"), py::arg("quad") = QuadConfig{});
  m.def("density_jump", &density_jump, py::arg("t"), py::arg("params"), py::arg("quad") = QuadConfig{},
        py::arg("route") = IntegralRoute::kernel);
  m.def("stationary_density", &stationary_density, py::arg("y"), py::arg("params"));
  m.def("density_one_drift", &density_one_drift, py::arg("t"), py::arg("y"), py::arg("mu"), py::arg("beta"));
  m.def("density_alternating", &density_alternating, py::arg("t"), py::arg("y"), py::arg("mu"), py::arg("beta"));

  m.def("potential_density", &potential_density, py::arg("x"), py::arg("y"), py::arg("params"), py::arg("q"));
  m.def("escape_probabilities", [](double x, const ModelParams& p) {
    const auto e = escape_probabilities(x, p);
    return py::make_tuple(e.p_plus_inf, e.p_minus_inf);
  }, py::arg("x"), py::arg("params"));
  m.def("hitting_probability", &hitting_probability, py::arg("x"), py::arg("z"), py::arg("params"));
  m.def("expected_hitting_time", &expected_hitting_time, py::arg("x"), py::arg("z"), py::arg("params"));

  py::class_<MixtureTruncatedNormal>(m, "MixtureTruncatedNormal")
      .def(py::init<>())
      .def_readwrite("alpha", &MixtureTruncatedNormal::alpha)
      .def_readwrite("mu1", &MixtureTruncatedNormal::mu1)
      .def_readwrite("sigma1", &MixtureTruncatedNormal::sigma1)
      .def_readwrite("mu2", &MixtureTruncatedNormal::mu2)
      .def_readwrite("sigma2", &MixtureTruncatedNormal::sigma2)
      .def_readwrite("objective", &MixtureTruncatedNormal::objective)
      .def("cdf", [](const MixtureTruncatedNormal& mtn, double x) { return mixture_cdf(x, mtn); })
      .def("pdf", [](const MixtureTruncatedNormal& mtn, double x) { return mixture_pdf(x, mtn); })
      .def("quantile", [](const MixtureTruncatedNormal& mtn, double u) { return sample_tna(mtn, u); });

  m.def("fit_tna", [](const ModelParams& p, double t, std::uint64_t seed) {
    FitConfig cfg;
    cfg.seed = seed;
    return fit_tna(p, t, cfg);
  }, py::arg("params"), py::arg("t"), py::arg("seed") = 0);

  m.def("simulate_paths", [](const ModelParams& p, double x0, double t, std::int64_t n_steps, std::int64_t n_paths,
                             std::uint64_t seed, bool jitter) {
    PathSimConfig sim;
    sim.n_steps = n_steps;
    sim.n_paths = n_paths;
    sim.seed = seed;
    sim.lattice_jitter = jitter;
    return simulate_paths(p, x0, t, sim);
  }, py::arg("params"), py::arg("x0"), py::arg("t"), py::arg("n_steps") = 1000, py::arg("n_paths") = 10000,
        py::arg("seed") = 0, py::arg("jitter") = false);

  m.def("var_mixture", &var_mixture, py::arg("mtn"), py::arg("q"));
  m.def("cvar_mixture", &cvar_mixture, py::arg("mtn"), py::arg("q"));

  m.def("ks_test", [](std::vector<double> xs, const std::function<double(double)>& cdf_fn) {
    const auto r = ks_test(std::move(xs), cdf_fn);
    return py::make_tuple(r.statistic, r.p_value);
  }, py::arg("samples"), py::arg("cdf"));
  m.def("erfcx", &erfcx, py::arg("z"));
  m.def("norm_cdf", &norm_cdf, py::arg("z"));
  m.def("norm_quantile", &norm_quantile, py::arg("p"));

  m.def("validate", [](const ModelParams& p, double t) {
    py::list out;
    for (const auto& c : validation_battery(p, t)) {
      py::dict d;
      d["name"] = c.name;
      d["status"] = to_string(c.status);
      d["measured"] = c.measured;
      d["threshold"] = c.threshold;
      out.append(d);
    }
    return out;
  }, py::arg("params"), py::arg("t"));

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
