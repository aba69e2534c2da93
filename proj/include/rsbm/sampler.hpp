#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rsbm/density.hpp"
#include "rsbm/model.hpp"
#include "rsbm/quadrature.hpp"

namespace rsbm {

/// Mixture of a normal truncated to (-inf, a) with weight alpha and a normal
/// truncated to (a, inf) with weight 1 - alpha. Here a is taken as 0; shift
/// model coordinates before use.
struct MixtureTruncatedNormal {
  double alpha = 0.5;
  double mu1 = 0.0;
  double sigma1 = 1.0;
  double mu2 = 0.0;
  double sigma2 = 1.0;
  /// Fit objective attached by fit_tna (NaN when not produced by a fit).
  double objective = std::numeric_limits<double>::quiet_NaN();

  /// Throws DomainError unless 0 <= alpha <= 1 and both sigmas are positive.
  void validate() const;
};

struct FitConfig {
  std::vector<double> grid = linspace(-20.0, 20.0, 2500);
  double objective_quantile = 0.99;
  int multi_starts = 8;
  int max_iterations = 5000;
  double convergence_tol = 1e-10;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Raised when no start of the optimiser converged; carries the best candidate.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, const MixtureTruncatedNormal& best)
      : std::runtime_error(what), best_(best) {}
  const MixtureTruncatedNormal& best() const noexcept { return best_; }

 private:
  MixtureTruncatedNormal best_;
};

double mixture_cdf(double x, const MixtureTruncatedNormal& mtn);
double mixture_pdf(double x, const MixtureTruncatedNormal& mtn);

/// Quantile of the objective |F - H| over the grid for a given reference CDF table.
double fit_objective(const MixtureTruncatedNormal& mtn, const std::vector<double>& grid,
                     const std::vector<double>& reference, double quantile);

/// Fits the mixture to the CDF of X_t (X_0 = a). Returned values are in
/// coordinates relative to the skew level.
MixtureTruncatedNormal fit_tna(const ModelParams& params, double t, const FitConfig& cfg = {},
                               const QuadConfig& quad = {});

/// Same, against a precomputed reference CDF on cfg.grid (skew level at 0).
/// mass_below is F(0) when known; otherwise it is interpolated from the table.
MixtureTruncatedNormal fit_tna(const std::vector<double>& reference, const FitConfig& cfg,
                               double mass_below = std::numeric_limits<double>::quiet_NaN());

/// Inverse of mixture_cdf at u in (0, 1).
double sample_tna(const MixtureTruncatedNormal& mtn, double u);

/// Monotone piecewise-linear inverse of a tabulated CDF.
struct InverseCdfTable {
  std::vector<double> grid;
  std::vector<double> cdf;
};

InverseCdfTable inverse_cdf_table(const CdfTable& table);
InverseCdfTable inverse_cdf_table(const ModelParams& params, double t, const std::vector<double>& grid,
                                  const QuadConfig& quad = {});
double sample_oracle(const InverseCdfTable& inv, double u);

struct PathSimConfig {
  std::int64_t n_steps = 1000;
  std::int64_t n_paths = 10000;
  std::uint64_t seed = 0;
  /// Spread each terminal value uniformly over its lattice cell (+/- one step).
  bool lattice_jitter = false;

  void validate(const ModelParams& params, double t) const;
};

/// Terminal values of the skew random walk with step sqrt(t / n_steps).
std::vector<double> simulate_paths(const ModelParams& params, double x0, double t, const PathSimConfig& sim);

/// Full trajectories (n_paths rows of n_steps + 1 values); meant for small runs.
std::vector<std::vector<double>> simulate_trajectories(const ModelParams& params, double x0, double t,
                                                       const PathSimConfig& sim);

struct PassageConfig {
  double dx = 0.01;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();
  std::int64_t n_paths = 10000;
  std::uint64_t seed = 0;

  void validate(const ModelParams& params) const;
};

struct PassageOutcome {
  double time;
  int exit;  // +1 reached upper, -1 reached lower, 0 still inside at t_max
};

/// First exit of the skew random walk (time step dx^2) from (lower, upper).
std::vector<PassageOutcome> simulate_passages(const ModelParams& params, double x0, const PassageConfig& cfg);

}  // namespace rsbm
