#include "rsbm/exit.hpp"

#include <cmath>
#include <limits>

#include "rsbm/errors.hpp"
#include "solutions.hpp"

namespace rsbm {

namespace {

void check_interval(double x, double y, double z) {
  if (!(y <= x && x <= z)) throw DomainError("two-sided exit requires y <= x <= z");
  if (!(y < z)) throw DomainError("two-sided exit requires y < z");
}

}  // namespace

double two_sided_exit_up(double x, double y, double z, const ModelParams& params, double q) {
  check_interval(x, y, z);
  if (x == z) return 1.0;
  if (x == y) return 0.0;
  const Roots r = roots(params, q);
  const Coeffs c = coeffs(params, r);
  const double u = params.shift(x), v = params.shift(y), w = params.shift(z);
  return detail::ratio(detail::w_terms(u, v, r, c), detail::w_terms(w, v, r, c));
}

double two_sided_exit_down(double x, double y, double z, const ModelParams& params, double q) {
  check_interval(x, y, z);
  if (x == y) return 1.0;
  if (x == z) return 0.0;
  const Roots r = roots(params, q);
  const Coeffs c = coeffs(params, r);
  const double u = params.shift(x), v = params.shift(y), w = params.shift(z);
  return detail::ratio(detail::w_terms(u, w, r, c), detail::w_terms(v, w, r, c));
}

double one_sided_hitting_laplace(double x, double r, const ModelParams& params, double q) {
  const Roots rt = roots(params, q);
  const Coeffs c = coeffs(params, rt);
  const double u = params.shift(x), v = params.shift(r);
  if (u == v) return 1.0;
  if (u > v) {
    if (v > 0.0) return std::exp(rt.rho1_plus * (u - v));
    return detail::ratio(detail::g1_terms(u, rt, c), detail::g1_terms(v, rt, c));
  }
  if (v <= 0.0) return std::exp(rt.rho2_minus * (u - v));
  return detail::ratio(detail::g2_terms(u, rt, c), detail::g2_terms(v, rt, c));
}

EscapeProbabilities escape_probabilities(double x, const ModelParams& params) {
  params.validate();
  const double mp = params.mu_plus, mm = params.mu_minus;
  if (!(mp > 0.0 && mm < 0.0)) throw DomainError("escape probabilities need mu_plus > 0 > mu_minus");
  const double bp = 1.0 + params.beta, bm = 1.0 - params.beta;
  const double d = bp * mp - bm * mm;
  const double u = params.shift(x);
  double p_plus;
  if (u < 0.0) {
    p_plus = bp * mp * std::exp(-2.0 * mm * u) / d;
  } else {
    p_plus = 1.0 + bm * mm * std::exp(-2.0 * mp * u) / d;
  }
  return {p_plus, 1.0 - p_plus};
}

double hitting_probability(double x, double z, const ModelParams& params) {
  params.validate();
  const double mp = params.mu_plus, mm = params.mu_minus;
  if (mm > 0.0 && mp < 0.0) return 1.0;
  if (!(mp > 0.0 && mm < 0.0)) {
    throw UnsupportedRegime("hitting probability needs opposite drifts (inward or outward)");
  }
  const double u = params.shift(x), v = params.shift(z);
  if (u == v) return 1.0;
  const double bp = 1.0 + params.beta, bm = 1.0 - params.beta;
  const double d = bp * mp - bm * mm;
  if (u < 0.0 && v > 0.0) return bp * mp * std::exp(-2.0 * mm * u) / (d + bm * mm * std::exp(-2.0 * mp * v));
  if (u >= 0.0 && u < v) {
    return (d + bm * mm * std::exp(-2.0 * mp * u)) / (d + bm * mm * std::exp(-2.0 * mp * v));
  }
  if (u < v) return std::exp(2.0 * mm * (v - u));  // below the skew level throughout
  if (v <= 0.0 && u >= 0.0) {
    return -bm * mm * std::exp(-2.0 * mp * u) / (d - bp * mp * std::exp(-2.0 * mm * v));
  }
  if (u <= 0.0) {
    return (d - bp * mp * std::exp(-2.0 * mm * u)) / (d - bp * mp * std::exp(-2.0 * mm * v));
  }
  return std::exp(-2.0 * mp * (u - v));  // above the skew level throughout
}

double expected_hitting_time(double x, double z, const ModelParams& params) {
  params.validate();
  const double mp = params.mu_plus, mm = params.mu_minus;
  if (mm < 0.0 || mp > 0.0) {
    throw UnsupportedRegime("expected hitting time needs mu_minus > 0 > mu_plus");
  }
  const double u = params.shift(x), v = params.shift(z);
  if (u == v) return 0.0;
  if (mm == 0.0 || mp == 0.0) return std::numeric_limits<double>::infinity();
  const double bp = 1.0 + params.beta, bm = 1.0 - params.beta;
  const double k = mm * bp - mp * bm;
  if (u < 0.0 && v > 0.0) {
    return (2.0 * bp * (mm * mp * v - mp * mp * u) + k * std::expm1(-2.0 * mp * v)) /
           (2.0 * mm * mp * mp * bp);
  }
  if (u >= 0.0 && u < v) {
    return (2.0 * bp * mm * mp * (v - u) + k * (std::exp(-2.0 * mp * v) - std::exp(-2.0 * mp * u))) /
           (2.0 * mm * mp * mp * bp);
  }
  if (u < v) return (v - u) / mm;
  if (v <= 0.0 && u >= 0.0) {
    return (2.0 * bm * (mm * mp * v - mm * mm * u) - k * std::expm1(-2.0 * mm * v)) /
           (2.0 * mm * mm * mp * bm);
  }
  if (u <= 0.0) {
    return (2.0 * mm * mp * bm * (v - u) + k * (std::exp(-2.0 * mm * u) - std::exp(-2.0 * mm * v))) /
           (2.0 * mm * mm * mp * bm);
  }
  return (u - v) / -mp;
}

}  // namespace rsbm
