#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace rsbm {

struct KsResult {
  double statistic;
  double p_value;
  std::size_t n;
};

/// Kolmogorov-Smirnov distance between the empirical CDF of samples and cdf.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov tail at lambda = (sqrt(n) + 0.12 + 0.11 / sqrt(n)) * d.
double ks_pvalue(double d, std::size_t n);

/// Kolmogorov tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_tail(double lambda);

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace rsbm
