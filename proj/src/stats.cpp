#include "rsbm/stats.hpp"

#include <algorithm>
#include <cmath>

#include "rsbm/errors.hpp"
#include "rsbm/special.hpp"

namespace rsbm {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return std::min(d, 1.0);
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.0) {
    // Jacobi theta form of the same function; the alternating series converges slowly here.
    const double a = kPi * kPi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 50; ++k) {
      const double term = std::exp(-(2 * k - 1) * (2 * k - 1) * a);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return std::clamp(1.0 - kSqrt2Pi / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-12) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_pvalue(double d, std::size_t n) {
  if (!(d >= 0.0 && d <= 1.0)) throw DomainError("ks_pvalue: d must lie in [0, 1]");
  if (n == 0) throw DomainError("ks_pvalue: n must be positive");
  const double sn = std::sqrt(static_cast<double>(n));
  return kolmogorov_tail((sn + 0.12 + 0.11 / sn) * d);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  const std::size_t n = samples.size();
  const double d = ks_statistic(std::move(samples), cdf);
  return {d, ks_pvalue(d, n), n};
}

}  // namespace rsbm
