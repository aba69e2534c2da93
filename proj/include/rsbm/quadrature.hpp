#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "rsbm/errors.hpp"

namespace rsbm {

struct QuadConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  /// Bound on the mass neglected when a semi-infinite range is truncated.
  double semi_infinite_truncation_tail = 1e-14;

  /// Throws ConfigError on non-positive tolerances or an empty budget.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

namespace detail {

// 21-point Gauss-Kronrod pair (QUADPACK qk21 nodes).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208048577850, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod21(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 21> fv{};
  const double fc = f(centre);
  fv[20] = fc;
  double resk = kWgk[10] * fc;
  double resg = 0.0;
  double resabs = std::fabs(resk);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc - reskh);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::fabs(fv[2 * j] - reskh) + std::fabs(fv[2 * j + 1] - reskh));
  }
  const double ah = std::fabs(half);
  const double value = resk * half;
  resabs *= ah;
  resasc *= ah;
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  if (!std::isfinite(value) || !std::isfinite(err)) {
    throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return {a, b, value, err};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b], always bisecting the
/// interval with the largest error estimate. Interior breakpoints seed the
/// initial partition. Throws AccuracyError (carrying the best estimate) when the
/// subdivision budget runs out before max(abs_tol, rel_tol*|value|) is met.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadConfig& cfg,
                     std::span<const double> breakpoints = {}) {
  if (!(a <= b)) throw DomainError("integrate: lower limit exceeds upper limit");
  if (a == b) return {};
  constexpr double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Segment> active;
  double value = 0.0;
  double error = 0.0;
  double frozen_value = 0.0;
  double frozen_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto s = detail::gauss_kronrod21(f, cuts[i], cuts[i + 1]);
    evaluations += 21;
    ++intervals;
    value += s.value;
    error += s.error;
    active.push(s);
  }

  auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(value)); };
  while (error > tolerance() && !active.empty()) {
    if (intervals >= cfg.max_subdivisions) {
      throw AccuracyError("integrate: subdivision budget exhausted", value, error);
    }
    const auto worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double scale = std::max(std::fabs(worst.a), std::fabs(worst.b));
    if (worst.b - worst.a <= 64.0 * eps * scale || mid <= worst.a || mid >= worst.b) {
      // Roundoff-limited: keep the estimate, stop refining this piece.
      frozen_value += worst.value;
      frozen_error += worst.error;
      continue;
    }
    const auto left = detail::gauss_kronrod21(f, worst.a, mid);
    const auto right = detail::gauss_kronrod21(f, mid, worst.b);
    evaluations += 42;
    ++intervals;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  double sum = frozen_value;
  double err = frozen_error;
  while (!active.empty()) {
    sum += active.top().value;
    err += active.top().error;
    active.pop();
  }
  return {sum, err, evaluations, intervals};
}

/// Integral of f over [a, inf) through the map x = a + (1 - s)/s onto (0, 1].
template <class F>
QuadResult integrate_semi_infinite(F&& f, double a, const QuadConfig& cfg,
                                   std::span<const double> breakpoints = {}) {
  std::vector<double> mapped;
  for (double p : breakpoints) {
    if (p > a) mapped.push_back(1.0 / (1.0 + (p - a)));
  }
  auto g = [&](double s) {
    const double x = a + (1.0 - s) / s;
    return f(x) / (s * s);
  };
  return integrate(g, 0.0, 1.0, cfg, mapped);
}

/// Integral of f over [a, inf), truncated at the first B (doubling the span)
/// where envelope(B), a bound on the remaining tail mass, drops below
/// cfg.semi_infinite_truncation_tail. The envelope value is added to the error.
template <class F, class E>
QuadResult integrate_semi_infinite(F&& f, double a, E&& envelope, const QuadConfig& cfg,
                                   std::span<const double> breakpoints = {}) {
  double span = 1.0;
  while (envelope(a + span) > cfg.semi_infinite_truncation_tail && span < 1e6) span *= 2.0;
  const double upper = a + span;
  std::vector<double> cuts;
  for (double p : breakpoints) {
    if (p > a && p < upper) cuts.push_back(p);
  }
  auto r = integrate(f, a, upper, cfg, cuts);
  r.error += envelope(upper);
  return r;
}

}  // namespace rsbm
