#include "rsbm/potential.hpp"

#include <array>
#include <cmath>

#include "rsbm/density.hpp"
#include "rsbm/errors.hpp"
#include "rsbm/exit.hpp"

namespace rsbm {

namespace {

struct Weights {
  Roots r;
  double d;  // common denominator of the skew-point terms
};

Weights weights(const ModelParams& params, double q) {
  const Roots r = roots(params, q);
  const double bp = 1.0 + params.beta, bm = 1.0 - params.beta;
  const double d = bp * params.mu_plus - bm * params.mu_minus + bp * r.delta_plus + bm * r.delta_minus;
  return {r, d};
}

void require_off_skew(double v) {
  if (v == 0.0) throw DomainError("potential density is undefined at the skew level");
}

}  // namespace

double potential_density_origin(double y, const ModelParams& params, double q) {
  return potential_density(params.skew_level, y, params, q);
}

double potential_density(double x, double y, const ModelParams& params, double q) {
  const double u = params.shift(x), v = params.shift(y);
  require_off_skew(v);
  const auto [r, d] = weights(params, q);
  const double mp = params.mu_plus, mm = params.mu_minus;
  const double dp = r.delta_plus, dm = r.delta_minus;
  if (v > 0.0) {
    const double skew = 2.0 * (1.0 + params.beta) * q / d;
    if (u <= 0.0) return skew * std::exp((-mm + dm) * u + (mp - dp) * v);
    const double free = q / dp * std::exp(mp * (v - u) - std::fabs(v - u) * dp) *
                        -std::expm1(-2.0 * std::min(u, v) * dp);
    return free + skew * std::exp(mp * (v - u) - (u + v) * dp);
  }
  const double skew = 2.0 * (1.0 - params.beta) * q / d;
  if (u >= 0.0) return skew * std::exp((-mp - dp) * u + (mm + dm) * v);
  const double free = q / dm * std::exp(mm * (v - u) - std::fabs(v - u) * dm) *
                      -std::expm1(2.0 * std::max(u, v) * dm);
  return free + skew * std::exp(mm * (v - u) + (u + v) * dm);
}

double potential_density_two_barriers(double x, double y, double b_minus, double b_plus,
                                      const ModelParams& params, double q) {
  const double lo = params.shift(b_minus), hi = params.shift(b_plus), u = params.shift(x);
  if (!(lo < 0.0 && 0.0 < hi)) throw DomainError("barriers must straddle the skew level");
  if (!(lo <= u && u <= hi)) throw DomainError("start must lie between the barriers");
  const double down = two_sided_exit_down(x, b_minus, b_plus, params, q);
  const double up = two_sided_exit_up(x, b_minus, b_plus, params, q);
  return potential_density(x, y, params, q) - down * potential_density(b_minus, y, params, q) -
         up * potential_density(b_plus, y, params, q);
}

double potential_density_one_barrier(double x, double y, double b_minus, const ModelParams& params,
                                     double q) {
  if (!(x >= b_minus)) throw DomainError("start must lie above the barrier");
  const double hit = one_sided_hitting_laplace(x, b_minus, params, q);
  return potential_density(x, y, params, q) - hit * potential_density(b_minus, y, params, q);
}

double laplace_density_oracle(double y, const ModelParams& params, double q, double t_max,
                              const QuadConfig& quad) {
  if (!(q > 0.0)) throw DomainError("laplace oracle: q must be positive");
  if (!(q * t_max >= 25.0)) throw DomainError("laplace oracle: q * t_max must be at least 25");
  const double v = params.shift(y);
  require_off_skew(v);
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    return q * std::exp(-q * t) * transition_density_origin(t, y, params, quad);
  };
  const std::array<double, 3> cuts = {v * v / 6.0, v * v, 1.0 / q};
  QuadConfig outer = quad;
  outer.rel_tol = std::max(quad.rel_tol, 1e-8);
  return integrate(f, 0.0, t_max, outer, cuts).value;
}

}  // namespace rsbm
