#pragma once

#include <utility>
#include <vector>

#include "rsbm/density.hpp"
#include "rsbm/sampler.hpp"

namespace rsbm {

struct RiskReport {
  double confidence;
  double var_formula;
  double cvar_formula;
  double var_interp;
  double var_mc;
  double cvar_mc;
};

/// q-quantile of the fitted mixture.
double var_mixture(const MixtureTruncatedNormal& mtn, double q);

/// Expected value beyond the q-quantile; defined for alpha < q < 1 only.
double cvar_mixture(const MixtureTruncatedNormal& mtn, double q);

/// Piecewise-linear inverse of a tabulated CDF at level q.
double var_from_cdf(const std::vector<double>& grid, const std::vector<double>& cdf, double q);
double var_from_cdf(const CdfTable& table, double q);

struct McRisk {
  double var;
  double cvar;
};

/// Order statistic at ceil(q n) (1-based) and the mean of samples at or above it.
McRisk mc_var_cvar(std::vector<double> samples, double q);

/// 100 confidence levels spread uniformly over [alpha + 0.01, 0.995].
std::vector<double> default_confidence_grid(double alpha);

/// One report row per confidence level. Table and samples must be in the same
/// coordinates as the mixture (skew level at 0).
std::vector<RiskReport> risk_reports(const MixtureTruncatedNormal& mtn, const CdfTable& table,
                                     const std::vector<double>& samples, const std::vector<double>& confidences);

}  // namespace rsbm
