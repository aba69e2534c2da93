#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rsbm/density.hpp"
#include "rsbm/errors.hpp"
#include "rsbm/io.hpp"
#include "rsbm/parallel.hpp"
#include "rsbm/presets.hpp"
#include "rsbm/risk.hpp"
#include "rsbm/sampler.hpp"
#include "rsbm/validate.hpp"

using namespace rsbm;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kValidationFailed = 1, kBadInput = 2, kFitFailed = 3 };

struct RunConfig {
  std::string model = "model1";
  std::optional<double> mu_minus, mu_plus, beta, skew_level, t;
  double x0 = std::nan("");
  double grid_min = -20.0;
  double grid_max = 20.0;
  int grid_points = 2500;
  std::uint64_t seed = 0;
  std::int64_t n = 100000;
  std::int64_t steps = 1000;
  bool jitter = false;
  std::string fit_file;
  std::string out;
  std::string format = "csv";
  double rel_tol = QuadConfig{}.rel_tol;
  double abs_tol = QuadConfig{}.abs_tol;
  std::optional<double> q_min, q_max;
  int q_points = 100;

  ModelParams params;
  double horizon = 0.0;
  QuadConfig quad;
};

void resolve(RunConfig& c) {
  if (c.model == "custom") {
    if (!c.mu_minus || !c.mu_plus || !c.beta || !c.t) {
      throw ConfigError("--model custom needs --mu-minus, --mu-plus, --beta and --t");
    }
    c.params = {*c.mu_minus, *c.mu_plus, *c.beta, c.skew_level.value_or(0.0)};
    c.horizon = *c.t;
  } else {
    const Preset p = preset(c.model);
    c.params = p.params;
    c.horizon = p.t;
    if (c.mu_minus) c.params.mu_minus = *c.mu_minus;
    if (c.mu_plus) c.params.mu_plus = *c.mu_plus;
    if (c.beta) c.params.beta = *c.beta;
    if (c.skew_level) c.params.skew_level = *c.skew_level;
    if (c.t) c.horizon = *c.t;
  }
  try {
    c.params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(c.horizon > 0.0) || !std::isfinite(c.horizon)) throw ConfigError("t must be positive and finite");
  if (std::isnan(c.x0)) c.x0 = c.params.skew_level;
  if (!std::isfinite(c.x0)) throw ConfigError("x0 must be finite");
  if (c.grid_points < 2) throw ConfigError("grid points must be at least 2");
  if (!(c.grid_min < c.grid_max) || !std::isfinite(c.grid_min) || !std::isfinite(c.grid_max)) {
    throw ConfigError("grid must satisfy grid-min < grid-max");
  }
  if (c.n < 0) throw ConfigError("n must be non-negative");
  if (c.steps < 1) throw ConfigError("steps must be positive");
  c.quad.rel_tol = c.rel_tol;
  c.quad.abs_tol = c.abs_tol;
  c.quad.validate();
}

std::vector<double> grid_of(const RunConfig& c) { return linspace(c.grid_min, c.grid_max, c.grid_points); }

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_table(const RunConfig& c, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  Output out(c.out);
  auto& os = out.stream();
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json o;
      for (std::size_t k = 0; k < header.size(); ++k) o[header[k]] = r[k];
      arr.push_back(o);
    }
    os << arr.dump(2) << "\n";
    return;
  }
  if (!header.empty()) {
    for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
    os << "\n";
  }
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << number(r[k]);
    os << "\n";
  }
}

void write_column(const RunConfig& c, const std::vector<double>& values) {
  Output out(c.out);
  auto& os = out.stream();
  if (c.format == "json") {
    os << json(values).dump() << "\n";
    return;
  }
  for (double v : values) os << number(v) << "\n";
}

int cmd_density(const RunConfig& c) {
  const auto grid = grid_of(c);
  std::vector<std::vector<double>> rows(grid.size());
  const double a = c.params.skew_level;
  parallel_for(grid.size(), [&](std::size_t i) {
    const double y = grid[i];
    double v;
    if (y != a) {
      v = transition_density(c.horizon, c.x0, y, c.params, c.quad);
    } else if (c.x0 == a) {
      v = transition_density_origin_limit(c.horizon, true, c.params, c.quad);
    } else {
      v = transition_density(c.horizon, c.x0, std::nextafter(a, INFINITY), c.params, c.quad);
    }
    rows[i] = {y, v};
  });
  write_table(c, {"y", "value"}, rows);
  return kOk;
}

int cmd_cdf(const RunConfig& c) {
  const auto grid = grid_of(c);
  std::vector<std::vector<double>> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    rows[i] = {grid[i], cdf(c.horizon, c.x0, grid[i], c.params, c.quad)};
  });
  write_table(c, {"y", "value"}, rows);
  return kOk;
}

void write_json(const RunConfig& c, const json& j) {
  Output out(c.out);
  out.stream() << j.dump(2) << "\n";
}

int cmd_fit(const RunConfig& c) {
  FitConfig cfg;
  cfg.grid = grid_of(c);
  cfg.seed = c.seed;
  cfg.validate();
  try {
    const auto m = fit_tna(c.params, c.horizon, cfg, c.quad);
    write_json(c, fit_to_json(m, c.params, c.horizon));
    return kOk;
  } catch (const FitError& e) {
    write_json(c, fit_to_json(e.best(), c.params, c.horizon));
    std::cerr << "rsbm: " << e.what() << "\n";
    return kFitFailed;
  }
}

struct LoadedFit {
  MixtureTruncatedNormal mtn;
  double skew_level;
};

LoadedFit load_fit(const RunConfig& c) {
  if (c.fit_file.empty()) throw ConfigError("--fit-file is required");
  std::ifstream in(c.fit_file);
  if (!in) throw ConfigError("cannot read fit file '" + c.fit_file + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("fit file is not valid JSON: ") + e.what());
  }
  LoadedFit f{fit_from_json(j), c.params.skew_level};
  if (j.contains("model")) {
    ModelParams p;
    double t = 0.0;
    model_from_json(j, p, t);
    f.skew_level = p.skew_level;
  }
  return f;
}

std::vector<double> draw(const MixtureTruncatedNormal& m, std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) {
    double v = u(rng);
    while (v == 0.0) v = u(rng);
    x = sample_tna(m, v);
  }
  return xs;
}

int cmd_sample(const RunConfig& c) {
  const auto f = load_fit(c);
  auto xs = draw(f.mtn, c.n, c.seed);
  for (auto& x : xs) x += f.skew_level;
  write_column(c, xs);
  return kOk;
}

int cmd_simulate(const RunConfig& c) {
  PathSimConfig sim;
  sim.n_steps = c.steps;
  sim.n_paths = c.n;
  sim.seed = c.seed;
  sim.lattice_jitter = c.jitter;
  if (c.n == 0) {
    write_column(c, {});
    return kOk;
  }
  sim.validate(c.params, c.horizon);
  write_column(c, simulate_paths(c.params, c.x0, c.horizon, sim));
  return kOk;
}

int cmd_risk(const RunConfig& c) {
  const auto f = load_fit(c);
  const double lo = c.q_min.value_or(f.mtn.alpha + 0.01);
  const double hi = c.q_max.value_or(0.995);
  if (!(lo > 0.0 && hi < 1.0 && lo <= hi) || c.q_points < 1) {
    throw ConfigError("confidence grid must lie in (0, 1) with q-min <= q-max");
  }
  const auto levels = c.q_points == 1 ? std::vector<double>{lo} : linspace(lo, hi, c.q_points);
  ModelParams shifted = c.params;
  shifted.skew_level = 0.0;
  const auto table = tabulate_cdf(c.horizon, shifted, grid_of(c), c.quad);
  const auto xs = draw(f.mtn, c.n, c.seed);
  std::vector<double> kept;
  for (double q : levels) {
    // CVaR is only defined above alpha; rows closer than 0.01 are dropped as well.
    if (q >= f.mtn.alpha + 0.01 - 1e-12 && q >= table.cdf.front() && q <= table.cdf.back()) kept.push_back(q);
  }
  std::vector<std::vector<double>> rows;
  if (!kept.empty()) {
    if (xs.empty()) throw ConfigError("risk needs n > 0 samples");
    const double a = f.skew_level;
    for (const auto& r : risk_reports(f.mtn, table, xs, kept)) {
      if (!(r.var_formula + a > 0.0)) continue;
      rows.push_back({r.confidence, r.var_formula + a, r.cvar_formula + a, r.var_interp + a, r.var_mc + a,
                      r.cvar_mc + a});
    }
  }
  write_table(c, {"confidence", "var_formula", "cvar_formula", "var_interp", "var_mc", "cvar_mc"}, rows);
  return kOk;
}

int cmd_validate(const RunConfig& c) {
  ValidationOptions opts;
  opts.seed = c.seed;
  const auto checks = validation_battery(c.params, c.horizon, c.quad, opts);
  json report;
  report["model"] = {{"mu_minus", c.params.mu_minus},
                     {"mu_plus", c.params.mu_plus},
                     {"beta", c.params.beta},
                     {"skew_level", c.params.skew_level},
                     {"t", c.horizon}};
  report["checks"] = json::array();
  for (const auto& k : checks) {
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    report["checks"].push_back({{"name", k.name},
                                {"status", to_string(k.status)},
                                {"measured", num(k.measured)},
                                {"threshold", num(k.threshold)},
                                {"note", k.note}});
  }
  const bool ok = all_passed(checks);
  report["passed"] = ok;
  write_json(c, report);
  return ok ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Refracted skew Brownian motion: densities, fits, sampling and risk"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* s) {
    s->add_option("--model", c.model, "model1..model4 or custom")
        ->check(CLI::IsMember({"model1", "model2", "model3", "model4", "custom"}));
    s->add_option("--mu-minus", c.mu_minus, "drift below the skew level");
    s->add_option("--mu-plus", c.mu_plus, "drift above the skew level");
    s->add_option("--beta", c.beta, "skew parameter in (-1, 1)");
    s->add_option("--skew-level", c.skew_level, "skew level a");
    s->add_option("--t", c.t, "time horizon");
    s->add_option("--x0", c.x0, "start (default: the skew level)");
    s->add_option("--grid-min", c.grid_min);
    s->add_option("--grid-max", c.grid_max);
    s->add_option("--grid-points", c.grid_points);
    s->add_option("--seed", c.seed);
    s->add_option("--n", c.n, "samples or paths");
    s->add_option("--fit-file", c.fit_file, "fit JSON written by the fit command");
    s->add_option("--out", c.out, "output path (default stdout)");
    s->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--rel-tol", c.rel_tol);
    s->add_option("--abs-tol", c.abs_tol);
  };

  auto* density = app.add_subcommand("density", "transition density p(t; x0, y) on a grid");
  auto* cdfc = app.add_subcommand("cdf", "P(X_t <= y | X_0 = x0) on a grid");
  auto* fit = app.add_subcommand("fit", "fit the truncated-normal mixture");
  auto* sample = app.add_subcommand("sample", "draw from a fitted mixture");
  auto* simulate = app.add_subcommand("simulate", "terminal values of the skew random walk");
  auto* risk = app.add_subcommand("risk", "VaR and CVaR from a fitted mixture");
  auto* validate = app.add_subcommand("validate", "numerical self-checks, JSON report");
  for (auto* s : {density, cdfc, fit, sample, simulate, risk, validate}) common(s);
  simulate->add_option("--steps", c.steps, "walk steps");
  simulate->add_flag("--jitter", c.jitter, "spread terminal values over their lattice cell");
  risk->add_option("--q-min", c.q_min, "lowest confidence (default alpha + 0.01)");
  risk->add_option("--q-max", c.q_max, "highest confidence (default 0.995)");
  risk->add_option("--q-points", c.q_points);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    resolve(c);
    if (density->parsed()) return cmd_density(c);
    if (cdfc->parsed()) return cmd_cdf(c);
    if (fit->parsed()) return cmd_fit(c);
    if (sample->parsed()) return cmd_sample(c);
    if (simulate->parsed()) return cmd_simulate(c);
    if (risk->parsed()) return cmd_risk(c);
    if (validate->parsed()) return cmd_validate(c);
  } catch (const ConfigError& e) {
    std::cerr << "rsbm: " << e.what() << "\n";
    return kBadInput;
  } catch (const DomainError& e) {
    std::cerr << "rsbm: " << e.what() << "\n";
    return kBadInput;
  } catch (const UnsupportedRegime& e) {
    std::cerr << "rsbm: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "rsbm: " << e.what() << "\n";
    return kValidationFailed;
  }
  return kBadInput;
}
