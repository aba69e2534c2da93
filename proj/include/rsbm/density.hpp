#pragma once

#include <vector>

#include "rsbm/model.hpp"
#include "rsbm/quadrature.hpp"

namespace rsbm {

/// How the double integrals over (b, tau) are evaluated.
///  kernel: the b-integral in closed form (Gaussian moments), tau adaptively.
///  nested: both integrals by adaptive quadrature (outer b, inner tau).
enum class IntegralRoute { kernel, nested };

struct HArgs {
  double t;
  double x;
  double mu;
};

/// h(t; x, mu) = |x| / sqrt(2 pi t^3) * exp(-(x + mu t)^2 / (2t)).
double h(double t, double x, double mu);
inline double h(const HArgs& a) { return h(a.t, a.x, a.mu); }

/// log h(t; x, mu); -inf at x = 0.
double log_h(double t, double x, double mu);

/// Laplace transform in t of h; zero at x = 0.
double h_laplace(double q, double x, double mu);

/// exp(log_prefactor) * int_0^t int_0^inf h(t - tau; a1 b + c1, m1) h(tau; a2 b + c2, m2) db dtau
/// with a1, a2 > 0 and c1, c2 >= 0.
QuadResult h_convolution_integral(double t, double a1, double c1, double m1, double a2, double c2,
                                  double m2, double log_prefactor, const QuadConfig& quad,
                                  IntegralRoute route = IntegralRoute::kernel);

struct DensityEvalRequest {
  double t;
  double x;
  double y;
  ModelParams params;
  QuadConfig quad;
};

/// Transition density p(t; a, y) from the skew level, y != a.
double transition_density_origin(double t, double y, const ModelParams& params,
                                 const QuadConfig& quad = {},
                                 IntegralRoute route = IntegralRoute::kernel);

/// Transition density p(t; x, y), y != a.
double transition_density(double t, double x, double y, const ModelParams& params,
                          const QuadConfig& quad = {}, IntegralRoute route = IntegralRoute::kernel);
double transition_density(const DensityEvalRequest& req);

/// One-sided limit p(t; a, a +/- 0) of the density from the skew level.
double transition_density_origin_limit(double t, bool above, const ModelParams& params,
                                       const QuadConfig& quad = {});

/// Closed form for mu_minus = mu_plus = mu (skew level at 0).
double density_one_drift(double t, double y, double mu, double beta);

/// Closed form for -mu_minus = mu_plus = mu (skew level at 0).
double density_alternating(double t, double y, double mu, double beta);

/// P(X_t <= z) for X_0 = a.
double cdf_origin(double t, double z, const ModelParams& params, const QuadConfig& quad = {});

/// P(X_t <= z) for X_0 = x, by integrating the transition density.
double cdf(double t, double x, double z, const ModelParams& params, const QuadConfig& quad = {});

/// p(t; a, a+) - p(t; a, a-).
double density_jump(double t, const ModelParams& params, const QuadConfig& quad = {},
                    IntegralRoute route = IntegralRoute::kernel);

/// Limit density for mu_minus > 0 > mu_plus, y != a.
double stationary_density(double y, const ModelParams& params);

/// CDF and one-sided densities of X_t (started at the skew level) on a grid.
struct CdfTable {
  std::vector<double> grid;
  std::vector<double> cdf;
  std::vector<double> pdf_left;
  std::vector<double> pdf_right;

  /// Piecewise-cubic Hermite interpolation; clamps outside the grid.
  double operator()(double z) const;
  /// Piecewise-linear interpolation; clamps outside the grid.
  double linear(double z) const;
};

/// Tabulates the CDF by accumulating the density over grid cells. The grid
/// must be strictly increasing; it need not contain the skew level.
CdfTable tabulate_cdf(double t, const ModelParams& params, const std::vector<double>& grid,
                      const QuadConfig& quad = {});

/// n equally spaced points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace rsbm
