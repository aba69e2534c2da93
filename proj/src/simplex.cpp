#include "rsbm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rsbm/errors.hpp"

namespace rsbm {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, const std::vector<double>& step,
                          const SimplexOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0 || step.size() != n) throw DomainError("nelder_mead: bad dimensions");
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  SimplexResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isnan(v) ? HUGE_VAL : v;
  };

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto along = [&](double coef, const std::vector<double>& from, std::vector<double>& out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coef * (centroid[j] - from[j]);
  };

  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double spread_x = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) spread_x = std::max(spread_x, std::fabs(pts[i][j] - pts[best][j]));
    }
    if (fv[worst] - fv[best] <= opts.f_tol && spread_x <= opts.x_tol) {
      res.converged = true;
      break;
    }
    if (res.iterations >= opts.max_iterations) break;
    ++res.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);
    }

    along(kReflect, pts[worst], trial);
    const double fr = eval(trial);
    if (fr < fv[best]) {
      for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + kExpand * (trial[j] - centroid[j]);
      const double fe = eval(trial2);
      if (fe < fr) {
        pts[worst] = trial2;
        fv[worst] = fe;
      } else {
        pts[worst] = trial;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      pts[worst] = trial;
      fv[worst] = fr;
      continue;
    }
    // Contraction: outside if the reflection improved on the worst point, else inside.
    if (fr < fv[worst]) {
      for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + kContract * (trial[j] - centroid[j]);
    } else {
      for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + kContract * (pts[worst][j] - centroid[j]);
    }
    const double fc = eval(trial2);
    if (fc < std::min(fr, fv[worst])) {
      pts[worst] = trial2;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[best][j] + kShrink * (pts[i][j] - pts[best][j]);
      fv[i] = eval(pts[i]);
    }
  }

  const auto it = std::min_element(fv.begin(), fv.end());
  res.x = pts[static_cast<std::size_t>(it - fv.begin())];
  res.fx = *it;
  return res;
}

}  // namespace rsbm
