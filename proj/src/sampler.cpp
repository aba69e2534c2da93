#include "rsbm/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>

#include "rsbm/errors.hpp"
#include "rsbm/parallel.hpp"
#include "rsbm/simplex.hpp"
#include "rsbm/special.hpp"

namespace rsbm {

void MixtureTruncatedNormal::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("mixture alpha must lie in [0, 1]");
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) throw DomainError("mixture sigmas must be positive");
  if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(sigma1) || !std::isfinite(sigma2)) {
    throw DomainError("mixture parameters must be finite");
  }
}

void FitConfig::validate() const {
  if (grid.size() < 2) throw ConfigError("fit grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("fit grid must be strictly increasing");
  }
  if (!(objective_quantile > 0.0 && objective_quantile <= 1.0)) {
    throw ConfigError("objective quantile must lie in (0, 1]");
  }
  if (multi_starts < 1) throw ConfigError("multi_starts must be at least 1");
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (!(convergence_tol > 0.0)) throw ConfigError("convergence_tol must be positive");
}

double mixture_cdf(double x, const MixtureTruncatedNormal& m) {
  if (x < 0.0) {
    if (m.alpha == 0.0) return 0.0;
    return m.alpha * std::exp(log_norm_cdf((x - m.mu1) / m.sigma1) - log_norm_cdf(-m.mu1 / m.sigma1));
  }
  const double upper = std::exp(log_norm_cdf((m.mu2 - x) / m.sigma2) - log_norm_cdf(m.mu2 / m.sigma2));
  return m.alpha + (1.0 - m.alpha) * (1.0 - upper);
}

double mixture_pdf(double x, const MixtureTruncatedNormal& m) {
  if (x < 0.0) {
    const double z = (x - m.mu1) / m.sigma1;
    return m.alpha / m.sigma1 * std::exp(-0.5 * z * z - log_norm_cdf(-m.mu1 / m.sigma1)) * kInvSqrt2Pi;
  }
  const double z = (x - m.mu2) / m.sigma2;
  return (1.0 - m.alpha) / m.sigma2 * std::exp(-0.5 * z * z - log_norm_cdf(m.mu2 / m.sigma2)) * kInvSqrt2Pi;
}

double fit_objective(const MixtureTruncatedNormal& mtn, const std::vector<double>& grid,
                     const std::vector<double>& reference, double quantile) {
  std::vector<double> err(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) err[i] = std::fabs(reference[i] - mixture_cdf(grid[i], mtn));
  // Linear interpolation between order statistics.
  const double pos = quantile * static_cast<double>(err.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  std::nth_element(err.begin(), err.begin() + static_cast<std::ptrdiff_t>(lo), err.end());
  const double a = err[lo];
  if (frac == 0.0 || lo + 1 >= err.size()) return a;
  const double b = *std::min_element(err.begin() + static_cast<std::ptrdiff_t>(lo) + 1, err.end());
  return a + frac * (b - a);
}

namespace {

using Theta = std::vector<double>;

MixtureTruncatedNormal decode(const Theta& th) {
  MixtureTruncatedNormal m;
  m.alpha = 1.0 / (1.0 + std::exp(-th[0]));
  m.mu1 = th[1];
  m.sigma1 = std::exp(th[2]);
  m.mu2 = th[3];
  m.sigma2 = std::exp(th[4]);
  return m;
}

Theta encode(double alpha, double mu1, double sigma1, double mu2, double sigma2) {
  alpha = std::clamp(alpha, 1e-6, 1.0 - 1e-6);
  return {std::log(alpha / (1.0 - alpha)), mu1, std::log(sigma1), mu2, std::log(sigma2)};
}

struct SideMoments {
  double mass = 0.0, mean = 0.0, second = 0.0;
};

// Conditional moments on each half-line from CDF increments over the grid cells.
std::array<SideMoments, 2> side_moments(const std::vector<double>& grid, const std::vector<double>& ref) {
  std::array<SideMoments, 2> m{};
  auto add = [&](int side, double lo, double hi, double mass) {
    if (mass <= 0.0) return;
    const double mid = 0.5 * (lo + hi);
    m[side].mass += mass;
    m[side].mean += mid * mass;
    m[side].second += (mid * mid + (hi - lo) * (hi - lo) / 12.0) * mass;
  };
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double lo = grid[i], hi = grid[i + 1], mass = ref[i + 1] - ref[i];
    if (hi <= 0.0) {
      add(0, lo, hi, mass);
    } else if (lo >= 0.0) {
      add(1, lo, hi, mass);
    } else {
      const double w = -lo / (hi - lo);
      add(0, lo, 0.0, w * mass);
      add(1, 0.0, hi, (1.0 - w) * mass);
    }
  }
  for (auto& s : m) {
    if (s.mass > 0.0) {
      s.mean /= s.mass;
      s.second /= s.mass;
    }
  }
  return m;
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  return ys[i] + (x - xs[i]) / (xs[i + 1] - xs[i]) * (ys[i + 1] - ys[i]);
}

// Coarse search over one truncated component with alpha held fixed; the sup
// error splits by side, so each side is a 2-d problem. The component is
// parametrised by sigma and the log-slope r of its density at the truncation
// point (positive r decays away from it), covering bell shapes and the
// near-exponential profiles of normals centred far across the cut.
std::pair<double, double> side_grid_search(const std::vector<double>& grid, const std::vector<double>& ref,
                                           double alpha, bool lower, double scale) {
  double best_err = HUGE_VAL, best_mu = 0.0, best_sigma = scale;
  MixtureTruncatedNormal m;
  m.alpha = alpha;
  for (int i = 0; i <= 80; ++i) {
    const double r = (-10.0 + 0.5 * i) / scale;
    for (int j = 0; j <= 40; ++j) {
      const double sigma = scale * std::exp(std::log(0.05) + j * (std::log(400.0) / 40.0));
      const double mu = (lower ? r : -r) * sigma * sigma;
      if (std::fabs(mu) > 1e3 * scale) continue;
      if (lower) {
        m.mu1 = mu;
        m.sigma1 = sigma;
      } else {
        m.mu2 = mu;
        m.sigma2 = sigma;
      }
      double err = 0.0;
      for (std::size_t k = 0; k < grid.size() && err < best_err; ++k) {
        if ((grid[k] < 0.0) != lower) continue;
        err = std::max(err, std::fabs(ref[k] - mixture_cdf(grid[k], m)));
      }
      if (err < best_err) {
        best_err = err;
        best_mu = mu;
        best_sigma = sigma;
      }
    }
  }
  return {best_mu, best_sigma};
}

}  // namespace

MixtureTruncatedNormal fit_tna(const std::vector<double>& reference, const FitConfig& cfg, double mass_below) {
  cfg.validate();
  if (reference.size() != cfg.grid.size()) throw ConfigError("reference CDF must match the fit grid");
  const auto& grid = cfg.grid;
  auto objective = [&](const Theta& th) {
    return fit_objective(decode(th), grid, reference, cfg.objective_quantile);
  };

  const double alpha0 = std::isnan(mass_below) ? interpolate(grid, reference, 0.0) : mass_below;
  const auto mom = side_moments(grid, reference);
  auto sd = [](const SideMoments& s) { return std::sqrt(std::max(s.second - s.mean * s.mean, 1e-6)); };
  auto rms = [](const SideMoments& s) { return std::sqrt(std::max(s.second, 1e-6)); };

  // Starts: moment matched, half-normal, and exponential-tail shapes (a normal
  // centred far across the truncation point has a near-exponential profile).
  std::vector<Theta> starts;
  starts.push_back(encode(alpha0, mom[0].mean, sd(mom[0]), mom[1].mean, sd(mom[1])));
  starts.push_back(encode(alpha0, 0.0, rms(mom[0]), 0.0, rms(mom[1])));
  {
    const double s1 = 2.0 * sd(mom[0]), s2 = 2.0 * sd(mom[1]);
    const double e1 = std::max(std::fabs(mom[0].mean), 1e-3), e2 = std::max(std::fabs(mom[1].mean), 1e-3);
    starts.push_back(encode(alpha0, s1 * s1 / e1, s1, -s2 * s2 / e2, s2));
    const auto lo = side_grid_search(grid, reference, alpha0, true, rms(mom[0]));
    const auto hi = side_grid_search(grid, reference, alpha0, false, rms(mom[1]));
    starts.insert(starts.begin(), encode(alpha0, lo.first, lo.second, hi.first, hi.second));
  }
  const std::size_t base = starts.size();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (static_cast<int>(starts.size()) < cfg.multi_starts) {
    Theta th = starts[starts.size() % base];
    th[0] += 0.2 * gauss(rng);
    th[1] += 0.5 * std::exp(th[2]) * gauss(rng);
    th[2] += 0.3 * gauss(rng);
    th[3] += 0.5 * std::exp(th[4]) * gauss(rng);
    th[4] += 0.3 * gauss(rng);
    starts.push_back(th);
  }
  starts.resize(static_cast<std::size_t>(cfg.multi_starts));

  SimplexOptions opts;
  opts.max_iterations = cfg.max_iterations;
  opts.f_tol = cfg.convergence_tol;
  auto steps = [](const Theta& th) {
    return std::vector<double>{0.5, 0.5 * std::exp(th[2]), 0.3, 0.5 * std::exp(th[4]), 0.3};
  };
  auto local_steps = [&](const Theta& th) {
    auto v = steps(th);
    for (double& x : v) x *= 0.05;
    return v;
  };
  auto sup_objective = [&](const Theta& th) { return fit_objective(decode(th), grid, reference, 1.0); };

  SimplexResult best;
  best.fx = HUGE_VAL;
  bool any_converged = false;
  for (const auto& th : starts) {
    // Settle each start on the sup-norm error first; the quantile objective alone
    // rewards pushing all error into the discarded top grid points.
    const auto pre = nelder_mead(sup_objective, th, steps(th), opts);
    auto r = nelder_mead(objective, pre.x, local_steps(pre.x), opts);
    any_converged = any_converged || r.converged;
    if (r.fx < best.fx) best = r;
  }
  // Restart from the incumbent to escape a collapsed simplex.
  auto polished = nelder_mead(objective, best.x, local_steps(best.x), opts);
  any_converged = any_converged || polished.converged;
  if (polished.fx <= best.fx) best = polished;

  MixtureTruncatedNormal out = decode(best.x);
  out.objective = best.fx;
  if (!any_converged) throw FitError("mixture fit did not converge from any start", out);
  return out;
}

MixtureTruncatedNormal fit_tna(const ModelParams& params, double t, const FitConfig& cfg, const QuadConfig& quad) {
  cfg.validate();
  std::vector<double> grid = cfg.grid;
  for (double& g : grid) g += params.skew_level;
  const CdfTable table = tabulate_cdf(t, params, grid, quad);
  return fit_tna(table.cdf, cfg, cdf_origin(t, params.skew_level, params, quad));
}

double sample_tna(const MixtureTruncatedNormal& m, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("sample_tna: u must lie in (0, 1)");
  if (u <= m.alpha) {
    const double log_p = std::log(u / m.alpha) + log_norm_cdf(-m.mu1 / m.sigma1);
    return std::min(0.0, m.mu1 + m.sigma1 * norm_quantile_from_log(std::min(log_p, -1e-300)));
  }
  // Upper branch through the complementary probability (1 - u) / (1 - alpha) * Phi(mu2 / sigma2).
  const double log_s = std::log((1.0 - u) / (1.0 - m.alpha)) + log_norm_cdf(m.mu2 / m.sigma2);
  return std::max(0.0, m.mu2 - m.sigma2 * norm_quantile_from_log(std::min(log_s, -1e-300)));
}

InverseCdfTable inverse_cdf_table(const CdfTable& table) {
  if (!(table.cdf.front() <= 1e-6 && table.cdf.back() >= 1.0 - 1e-6)) {
    throw DomainError("CDF grid does not span the distribution (endpoint CDF not within 1e-6 of 0 and 1)");
  }
  return {table.grid, table.cdf};
}

InverseCdfTable inverse_cdf_table(const ModelParams& params, double t, const std::vector<double>& grid,
                                  const QuadConfig& quad) {
  return inverse_cdf_table(tabulate_cdf(t, params, grid, quad));
}

double sample_oracle(const InverseCdfTable& inv, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("sample_oracle: u must lie in (0, 1)");
  const auto& c = inv.cdf;
  if (u < c.front()) return inv.grid.front();
  if (u >= c.back()) return inv.grid.back();
  const auto it = std::upper_bound(c.begin(), c.end(), u);
  const std::size_t i = static_cast<std::size_t>(it - c.begin()) - 1;
  if (c[i] == u) return inv.grid[i];
  return inv.grid[i] + (u - c[i]) / (c[i + 1] - c[i]) * (inv.grid[i + 1] - inv.grid[i]);
}

void PathSimConfig::validate(const ModelParams& params, double t) const {
  params.validate();
  if (n_steps < 1 || n_paths < 1) throw ConfigError("path simulation needs positive step and path counts");
  if (!(t > 0.0)) throw ConfigError("path simulation needs a positive horizon");
  const double dx = std::sqrt(t / static_cast<double>(n_steps));
  if (std::max(std::fabs(params.mu_minus), std::fabs(params.mu_plus)) * dx > 1.0) {
    throw ConfigError("step too coarse: |mu| * sqrt(t / n_steps) must not exceed 1");
  }
}

void PassageConfig::validate(const ModelParams& params) const {
  params.validate();
  if (!(dx > 0.0) || n_paths < 1) throw ConfigError("passage simulation needs dx > 0 and paths");
  if (std::max(std::fabs(params.mu_minus), std::fabs(params.mu_plus)) * dx > 1.0) {
    throw ConfigError("step too coarse: |mu| * dx must not exceed 1");
  }
  if (!(lower < upper)) throw ConfigError("passage levels must satisfy lower < upper");
  if (std::isinf(t_max) && std::isinf(lower) && std::isinf(upper)) {
    throw ConfigError("passage simulation needs a finite level or horizon");
  }
}

namespace {

constexpr std::int64_t kBlock = 4096;

struct Walk {
  std::uint64_t up_below, up_at, up_above;  // thresholds on 32-bit draws

  Walk(const ModelParams& p, double dx) {
    auto thr = [](double prob) {
      return static_cast<std::uint64_t>(std::llround(std::clamp(prob, 0.0, 1.0) * 4294967296.0));
    };
    up_below = thr(0.5 * (1.0 + p.mu_minus * dx));
    // Exit law of the skew node over (-dx, dx), from the scale function.
    auto span = [dx](double mu) { return mu == 0.0 ? dx : -std::expm1(-2.0 * mu * dx) / (2.0 * mu); };
    const double above = span(p.mu_plus) / (1.0 + p.beta);
    const double below = span(-p.mu_minus) / (1.0 - p.beta);
    up_at = thr(below / (above + below));
    up_above = thr(0.5 * (1.0 + p.mu_plus * dx));
  }

  std::uint64_t threshold(std::int64_t k) const { return k > 0 ? up_above : (k < 0 ? up_below : up_at); }
};

std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

template <class Visit>
void run_blocks(std::int64_t n_paths, std::uint64_t seed, Visit&& visit) {
  const auto blocks = static_cast<std::size_t>((n_paths + kBlock - 1) / kBlock);
  parallel_for(blocks, [&](std::size_t b) {
    auto rng = block_rng(seed, b);
    const std::int64_t lo = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t hi = std::min(n_paths, lo + kBlock);
    for (std::int64_t i = lo; i < hi; ++i) visit(i, rng);
  });
}

}  // namespace

std::vector<double> simulate_paths(const ModelParams& params, double x0, double t, const PathSimConfig& sim) {
  sim.validate(params, t);
  const double dx = std::sqrt(t / static_cast<double>(sim.n_steps));
  const Walk walk(params, dx);
  const auto k0 = static_cast<std::int64_t>(std::llround(params.shift(x0) / dx));
  std::vector<double> out(static_cast<std::size_t>(sim.n_paths));
  run_blocks(sim.n_paths, sim.seed, [&](std::int64_t i, std::mt19937_64& rng) {
    std::int64_t k = k0;
    std::int64_t left = sim.n_steps;
    while (left > 0) {
      const std::uint64_t bits = rng();
      k += (bits & 0xffffffffu) < walk.threshold(k) ? 1 : -1;
      if (--left == 0) break;
      k += (bits >> 32) < walk.threshold(k) ? 1 : -1;
      --left;
    }
    double x = params.skew_level + static_cast<double>(k) * dx;
    if (sim.lattice_jitter) {
      const double u = std::generate_canonical<double, 53>(rng);
      if (k != 0) {
        x += (2.0 * u - 1.0) * dx;
      } else {
        // The node cell splits in proportion to the one-sided densities (1 + beta) : (1 - beta).
        const double up = 0.5 * (1.0 + params.beta);
        x += u < up ? (u / up) * dx : -((u - up) / (1.0 - up)) * dx;
      }
    }
    out[static_cast<std::size_t>(i)] = x;
  });
  return out;
}

std::vector<std::vector<double>> simulate_trajectories(const ModelParams& params, double x0, double t,
                                                       const PathSimConfig& sim) {
  sim.validate(params, t);
  const double dx = std::sqrt(t / static_cast<double>(sim.n_steps));
  const Walk walk(params, dx);
  const auto k0 = static_cast<std::int64_t>(std::llround(params.shift(x0) / dx));
  std::vector<std::vector<double>> out(static_cast<std::size_t>(sim.n_paths));
  run_blocks(sim.n_paths, sim.seed, [&](std::int64_t i, std::mt19937_64& rng) {
    auto& path = out[static_cast<std::size_t>(i)];
    path.resize(static_cast<std::size_t>(sim.n_steps) + 1);
    std::int64_t k = k0;
    path[0] = params.skew_level + static_cast<double>(k) * dx;
    for (std::int64_t s = 1; s <= sim.n_steps; ++s) {
      k += (rng() & 0xffffffffu) < walk.threshold(k) ? 1 : -1;
      path[static_cast<std::size_t>(s)] = params.skew_level + static_cast<double>(k) * dx;
    }
  });
  return out;
}

std::vector<PassageOutcome> simulate_passages(const ModelParams& params, double x0, const PassageConfig& cfg) {
  cfg.validate(params);
  const double dx = cfg.dx;
  const Walk walk(params, dx);
  const auto k0 = static_cast<std::int64_t>(std::llround(params.shift(x0) / dx));
  constexpr auto kFar = std::numeric_limits<std::int64_t>::max() / 4;
  const std::int64_t k_lo = std::isinf(cfg.lower) ? -kFar : std::llround(params.shift(cfg.lower) / dx);
  const std::int64_t k_hi = std::isinf(cfg.upper) ? kFar : std::llround(params.shift(cfg.upper) / dx);
  const std::int64_t max_steps =
      std::isinf(cfg.t_max) ? kFar : static_cast<std::int64_t>(std::floor(cfg.t_max / (dx * dx)));
  std::vector<PassageOutcome> out(static_cast<std::size_t>(cfg.n_paths));
  run_blocks(cfg.n_paths, cfg.seed, [&](std::int64_t i, std::mt19937_64& rng) {
    std::int64_t k = k0, steps = 0;
    int exit = k >= k_hi ? 1 : (k <= k_lo ? -1 : 0);
    std::uint64_t bits = 0;
    while (exit == 0 && steps < max_steps) {
      if ((steps & 1) == 0) bits = rng();
      const std::uint64_t draw = (steps & 1) == 0 ? (bits & 0xffffffffu) : (bits >> 32);
      k += draw < walk.threshold(k) ? 1 : -1;
      ++steps;
      if (k >= k_hi) exit = 1;
      if (k <= k_lo) exit = -1;
    }
    out[static_cast<std::size_t>(i)] = {static_cast<double>(steps) * dx * dx, exit};
  });
  return out;
}

}  // namespace rsbm
