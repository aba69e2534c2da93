#include "rsbm/risk.hpp"

#include <algorithm>
#include <cmath>

#include "rsbm/errors.hpp"
#include "rsbm/special.hpp"

namespace rsbm {

double var_mixture(const MixtureTruncatedNormal& mtn, double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("var_mixture: q must lie in (0, 1)");
  return sample_tna(mtn, q);
}

double cvar_mixture(const MixtureTruncatedNormal& m, double q) {
  if (!(q < 1.0)) throw DomainError("cvar_mixture: q must be below 1");
  if (!(q > m.alpha && q > 0.0)) throw UnsupportedRegime("cvar_mixture: closed form needs q > alpha");
  const double log_s = std::log((1.0 - q) / (1.0 - m.alpha)) + log_norm_cdf(m.mu2 / m.sigma2);
  const double zq = norm_quantile_from_log(std::min(log_s, -1e-300));
  // phi(zq) / Phi(mu2 / sigma2) in log form.
  const double ratio = std::exp(-0.5 * zq * zq - log_norm_cdf(m.mu2 / m.sigma2)) * kInvSqrt2Pi;
  return m.mu2 + m.sigma2 * (1.0 - m.alpha) * ratio / (1.0 - q);
}

double var_from_cdf(const std::vector<double>& grid, const std::vector<double>& cdf, double q) {
  if (grid.size() != cdf.size() || grid.size() < 2) throw DomainError("var_from_cdf: malformed table");
  if (!(q >= cdf.front() && q <= cdf.back())) throw DomainError("var_from_cdf: q outside tabulated range");
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), q);
  const auto i = static_cast<std::size_t>(it - cdf.begin());
  if (cdf[i] == q || i == 0) return grid[i];
  return grid[i - 1] + (q - cdf[i - 1]) / (cdf[i] - cdf[i - 1]) * (grid[i] - grid[i - 1]);
}

double var_from_cdf(const CdfTable& table, double q) { return var_from_cdf(table.grid, table.cdf, q); }

McRisk mc_var_cvar(std::vector<double> samples, double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("mc_var_cvar: q must lie in (0, 1)");
  const std::size_t n = samples.size();
  if (n == 0 || static_cast<double>(n) < std::ceil(1.0 / (1.0 - q) - 1e-9)) {
    throw DomainError("mc_var_cvar: too few samples for a non-empty tail");
  }
  std::sort(samples.begin(), samples.end());
  // Guard against q * n landing just above an integer through rounding.
  auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, n);
  const double var = samples[k - 1];
  const auto first = std::lower_bound(samples.begin(), samples.end(), var);
  double sum = 0.0;
  for (auto it = first; it != samples.end(); ++it) sum += *it;
  return {var, sum / static_cast<double>(samples.end() - first)};
}

std::vector<double> default_confidence_grid(double alpha) { return linspace(alpha + 0.01, 0.995, 100); }

std::vector<RiskReport> risk_reports(const MixtureTruncatedNormal& mtn, const CdfTable& table,
                                     const std::vector<double>& samples, const std::vector<double>& confidences) {
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<RiskReport> out;
  out.reserve(confidences.size());
  for (double q : confidences) {
    RiskReport r{};
    r.confidence = q;
    r.var_formula = var_mixture(mtn, q);
    r.cvar_formula = q > mtn.alpha ? cvar_mixture(mtn, q) : std::nan("");
    r.var_interp = var_from_cdf(table, q);
    const McRisk mc = mc_var_cvar(sorted, q);
    r.var_mc = mc.var;
    r.cvar_mc = mc.cvar;
    out.push_back(r);
  }
  return out;
}

}  // namespace rsbm
