#pragma once

#include <functional>
#include <vector>

namespace rsbm {

struct SimplexOptions {
  int max_iterations = 5000;
  /// Converged once the spread of objective values over the simplex is below
  /// f_tol and every vertex is within x_tol (max-norm) of the best one.
  double f_tol = 1e-10;
  double x_tol = 1e-8;
};

struct SimplexResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead minimisation started from the simplex x0, x0 + step_i e_i.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, const std::vector<double>& step,
                          const SimplexOptions& opts = {});

}  // namespace rsbm
