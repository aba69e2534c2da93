#include "rsbm/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rsbm/density.hpp"
#include "rsbm/errors.hpp"
#include "rsbm/exit.hpp"
#include "rsbm/potential.hpp"
#include "rsbm/sampler.hpp"
#include "rsbm/stats.hpp"

namespace rsbm {

namespace {

Check verdict(std::string name, double measured, double threshold, std::string note = {}) {
  const bool ok = std::isfinite(measured) && measured <= threshold;
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, measured, threshold, std::move(note)};
}

Check skipped(std::string name, std::string why) {
  return {std::move(name), CheckStatus::skipped, std::nan(""), std::nan(""), std::move(why)};
}

// Runs a check, turning a numerical breakdown into a failure rather than an abort.
template <class F>
Check guarded(const std::string& name, double threshold, F&& body) {
  try {
    return body();
  } catch (const AccuracyError& e) {
    return {name, CheckStatus::fail, std::nan(""), threshold, e.what()};
  } catch (const DomainError& e) {
    return {name, CheckStatus::fail, std::nan(""), threshold, e.what()};
  }
}

}  // namespace

std::vector<Check> validation_battery(const ModelParams& params, double t, const QuadConfig& quad,
                                      const ValidationOptions& opts) {
  params.validate();
  quad.validate();
  if (!(t > 0.0)) throw ConfigError("validation needs a positive horizon");
  ModelParams p = params;
  p.skew_level = 0.0;
  const double mm = p.mu_minus, mp = p.mu_plus;
  std::vector<Check> out;

  out.push_back(guarded("normalization", 1e-6, [&] {
    auto f = [&](double y) { return y == 0.0 ? 0.0 : transition_density_origin(t, y, p, quad); };
    const double bp[] = {0.0};
    const double m = integrate(f, -20.0, 20.0, quad, bp).value;
    const double promised = std::max(quad.abs_tol, quad.rel_tol * std::fabs(m));
    return verdict("normalization", std::fabs(m - 1.0) + promised, 1e-6,
                   "|int_{-20}^{20} p(t; a, y) dy - 1| plus the requested quadrature tolerance");
  }));

  out.push_back(guarded("laplace_consistency", 1e-4, [&] {
    double worst = 0.0;
    for (double q : {0.5, 1.0, 2.0})
      for (double y : {-1.0, 0.5, 2.0}) {
        const double closed = potential_density_origin(y, p, q);
        worst = std::max(worst, std::fabs(laplace_density_oracle(y, p, q, 40.0 / q, quad) - closed) / closed);
      }
    return verdict("laplace_consistency", worst, 1e-4, "max relative error, q in {0.5,1,2}, y - a in {-1,0.5,2}");
  }));

  if (mm == mp || mm == -mp) {
    out.push_back(guarded("closed_form", 1e-6, [&] {
      double worst = 0.0;
      for (double y : {-3.0, -1.0, -0.25, 0.25, 1.0, 3.0}) {
        const double closed = mm == mp ? density_one_drift(t, y, mp, p.beta) : density_alternating(t, y, mp, p.beta);
        worst = std::max(worst, std::fabs(transition_density_origin(t, y, p, quad) - closed));
      }
      return verdict("closed_form", worst, 1e-6, mm == mp ? "one-drift closed form" : "alternating-drift closed form");
    }));
  } else {
    out.push_back(skipped("closed_form", "needs mu_minus = mu_plus or mu_minus = -mu_plus"));
  }

  out.push_back(guarded("jump", 1e-5, [&] {
    const double e = 1e-6;
    const double d1 = transition_density_origin(t, e, p, quad) - transition_density_origin(t, -e, p, quad);
    const double d2 = transition_density_origin(t, 2 * e, p, quad) - transition_density_origin(t, -2 * e, p, quad);
    return verdict("jump", std::fabs(2 * d1 - d2 - density_jump(t, p, quad)), 1e-5,
                   "one-sided limits at +/-1e-6, extrapolated to zero offset");
  }));

  if (mm > 0.0 && mp < 0.0) {
    out.push_back(guarded("stationary", 1e-3, [&] {
      double worst = 0.0;
      for (double y : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
        worst = std::max(worst, std::fabs(transition_density_origin(50.0, y, p, quad) - stationary_density(y, p)));
      }
      return verdict("stationary", worst, 1e-3, "sup |p(50; a, y) - stationary(y)|");
    }));
  } else {
    out.push_back(skipped("stationary", "needs mu_minus > 0 > mu_plus"));
  }

  if (mp > 0.0 && mm < 0.0) {
    double worst = 0.0;
    for (double x : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
      const auto e = escape_probabilities(x, p);
      worst = std::max(worst, std::fabs(e.p_plus_inf + e.p_minus_inf - 1.0));
    }
    out.push_back(verdict("escape", worst, 1e-12, "|P(+inf) + P(-inf) - 1|"));
  } else {
    out.push_back(skipped("escape", "needs mu_plus > 0 > mu_minus"));
  }

  // Sampling checks share one fit and one reference table.
  CdfTable table;
  MixtureTruncatedNormal fit;
  bool have_fit = false;
  out.push_back(guarded("fit_quality", 0.01, [&] {
    table = tabulate_cdf(t, p, linspace(-20.0, 20.0, 8001), quad);
    FitConfig cfg;
    cfg.seed = opts.seed;
    try {
      fit = fit_tna(p, t, cfg, quad);
    } catch (const FitError& e) {
      fit = e.best();
    }
    have_fit = true;
    return verdict("fit_quality", fit.objective, 0.01, "Q_0.99 |F - H| on the fit grid");
  }));

  if (have_fit && opts.ks_samples > 0) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> xs(static_cast<std::size_t>(opts.ks_samples));
    for (auto& x : xs) {
      double v = u(rng);
      while (v == 0.0) v = u(rng);
      x = sample_tna(fit, v);
    }
    const auto r = ks_test(xs, [&](double z) { return table(z); });
    out.push_back({"ks_sampler", r.p_value > 0.05 ? CheckStatus::pass : CheckStatus::fail, r.p_value, 0.05,
                   "K-S p-value of mixture samples must exceed 0.05"});
  } else {
    out.push_back(skipped("ks_sampler", "no fit or no samples requested"));
  }

  const double dx = std::sqrt(t / static_cast<double>(opts.walk_steps));
  if (have_fit && opts.walk_paths > 0 && std::max(std::fabs(mm), std::fabs(mp)) * dx <= 1.0) {
    PathSimConfig sim;
    sim.n_steps = opts.walk_steps;
    sim.n_paths = opts.walk_paths;
    sim.seed = opts.seed;
    sim.lattice_jitter = true;
    const auto xs = simulate_paths(p, 0.0, t, sim);
    const auto r = ks_test(xs, [&](double z) { return table(z); });
    out.push_back({"ks_walk", r.p_value > 0.01 ? CheckStatus::pass : CheckStatus::fail, r.p_value, 0.01,
                   "K-S p-value of random-walk terminal values must exceed 0.01"});
  } else {
    out.push_back(skipped("ks_walk", "no reference table, no paths, or step too coarse"));
  }
  return out;
}

bool all_passed(const std::vector<Check>& checks) {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::fail; });
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

}  // namespace rsbm
