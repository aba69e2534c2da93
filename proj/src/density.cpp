#include "rsbm/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "rsbm/errors.hpp"
#include "rsbm/special.hpp"

namespace rsbm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time horizon must be positive");
}

// Mode in s of s^{-3/2} exp(-(c + m s)^2 / 2s).
double h_mode(double c, double m) { return 2.0 * c * c / (3.0 + std::sqrt(9.0 + 4.0 * m * m * c * c)); }

QuadResult combine(const QuadResult& a, const QuadResult& b) {
  return {a.value + b.value, a.error + b.error, a.evaluations + b.evaluations, a.intervals + b.intervals};
}

// int_0^t f(t - tau, tau) dtau, split at t/2 with tau = u^2 on the left half and
// t - tau = u^2 on the right half. c1, m1 describe the kernel living on t - tau
// and c2, m2 the one on tau; their modes seed the partition.
template <class F>
QuadResult tau_integral(F&& f, double t, double c1, double m1, double c2, double m2,
                        const QuadConfig& cfg) {
  const double half = std::sqrt(0.5 * t);
  QuadConfig sub = cfg;
  sub.abs_tol = 0.5 * cfg.abs_tol;
  auto cuts = [](double c, double m) {
    std::vector<double> v;
    if (c > 0.0) {
      v.push_back(c / std::sqrt(3.0));
      v.push_back(std::sqrt(h_mode(c, m)));
    }
    return v;
  };
  const auto lc = cuts(c2, m2);
  const auto rc = cuts(c1, m1);
  auto left = [&](double u) {
    const double s2 = u * u;
    return 2.0 * u * f(t - s2, s2);
  };
  auto right = [&](double u) {
    const double s1 = u * u;
    return 2.0 * u * f(s1, t - s1);
  };
  return combine(integrate(left, 0.0, half, sub, lc), integrate(right, 0.0, half, sub, rc));
}

struct KernelArgs {
  double a1, c1, m1, a2, c2, m2, log_pref;
};

// int_0^inf h(s1; a1 b + c1, m1) h(s2; a2 b + c2, m2) db, times exp(log_pref),
// from the Gaussian moments of b.
double b_integral_closed(double s1, double s2, const KernelArgs& g) {
  const double k1 = g.c1 + g.m1 * s1;
  const double k2 = g.c2 + g.m2 * s2;
  const double p = g.a1 * g.a1 / (2.0 * s1) + g.a2 * g.a2 / (2.0 * s2);
  const double q = g.a1 * k1 / s1 + g.a2 * k2 / s2;
  const double r = k1 * k1 / (2.0 * s1) + k2 * k2 / (2.0 * s2);
  const double sp = std::sqrt(p);
  const double z = q / (2.0 * sp);
  const double lp = g.log_pref - std::log(2.0 * kPi) - 1.5 * std::log(s1 * s2);
  double m0, m1, m2;
  if (z >= 0.0) {
    const double er = std::exp(lp - r);
    if (er == 0.0) return 0.0;
    const double ex = erfcx(z);
    m0 = 0.5 * std::sqrt(kPi / p) * er * ex;
    double one_minus, bracket;
    if (z >= 8.0) {
      const double x = 1.0 / (2.0 * z * z);
      double term = -x;  // n = 1
      double tail = 0.0;  // sum over n >= 2
      for (int n = 2; n < 60; ++n) {
        term *= -(2.0 * n - 1.0) * x;
        tail += term;
        if (std::fabs(term) < 1e-17 * std::fabs(tail)) break;
      }
      const double s = tail - x;
      one_minus = -s;
      bracket = z * tail + s / (2.0 * z);
    } else {
      one_minus = 1.0 - kSqrtPi * z * ex;
      bracket = -z + kSqrtPi * ex * (0.5 + z * z);
    }
    m1 = er / (2.0 * p) * one_minus;
    m2 = er / (2.0 * p * sp) * bracket;
  } else {
    // Peak of the b-Gaussian lies inside (0, inf); its height is exp(-r_min).
    const double r_min = std::pow(g.a2 * k1 - g.a1 * k2, 2) / (4.0 * s1 * s2 * p);
    const double er = std::exp(lp - r);
    const double em = std::exp(lp - r_min);
    if (em == 0.0) return 0.0;
    const double g0 = 0.5 * std::sqrt(kPi / p) * em * std::erfc(z);
    const double b0 = -z / sp;
    m0 = g0;
    m1 = er / (2.0 * p) + b0 * g0;
    m2 = b0 * er / (2.0 * p) + g0 * (1.0 / (2.0 * p) + b0 * b0);
  }
  return g.a1 * g.a2 * m2 + (g.a1 * g.c2 + g.a2 * g.c1) * m1 + g.c1 * g.c2 * m0;
}

double log_erfc(double w) { return w >= 0.0 ? std::log(erfcx(w)) - w * w : std::log(std::erfc(w)); }

double gauss(double z, double mu, double t) {
  const double d = z - mu * t;
  return std::exp(-d * d / (2.0 * t)) / std::sqrt(2.0 * kPi * t);
}

// P(X_t <= z) for z < 0 in shifted coordinates.
double cdf_below(double t, double z, double mm, double mp, double beta, const QuadConfig& quad) {
  const double bp = 1.0 + beta, bm = 1.0 - beta;
  QuadConfig inner = quad;
  inner.rel_tol = 0.1 * quad.rel_tol;
  inner.abs_tol = 0.1 * quad.abs_tol;
  auto outer = [&](double b) {
    const double x1 = bp * b;
    const double x2 = bm * b - z;
    const double drift = 2.0 * mm * bm * b;
    auto f = [&](double s1, double s2) {
      const double lh = log_h(s1, x1, mp);
      if (lh == kNegInf) return 0.0;
      const double w = x2 + mm * s2;
      const double gauss_part = std::exp(drift + lh - w * w / (2.0 * s2)) / std::sqrt(2.0 * kPi * s2);
      const double erfc_part = 0.5 * mm * std::exp(drift + lh + log_erfc(w / std::sqrt(2.0 * s2)));
      return gauss_part - erfc_part;
    };
    return tau_integral(f, t, x1, mp, x2, mm, inner).value;
  };
  const double spread = std::fabs(mp) * t;
  auto envelope = [&](double b) {
    const double e1 = std::max(0.0, bp * b - spread);
    const double e2 = std::max(0.0, bm * b - z - std::fabs(mm) * t);
    const double lg = std::min(2.0 * mm * bm * b - e1 * e1 / (2.0 * t), 2.0 * mm * z - e2 * e2 / (2.0 * t));
    return (1.0 + std::fabs(mm) * t) * std::exp(lg);
  };
  QuadConfig oq = quad;
  oq.abs_tol = quad.abs_tol / (2.0 * bm);
  return 2.0 * bm * integrate_semi_infinite(outer, 0.0, envelope, oq).value;
}

double shifted_density(double t, double u, double v, const ModelParams& params, const QuadConfig& quad,
                       IntegralRoute route) {
  const double bp = 1.0 + params.beta, bm = 1.0 - params.beta;
  const double mp = params.mu_plus, mm = params.mu_minus;
  if (v > 0.0) {
    const double lp = std::log(2.0 * bp) + 2.0 * mp * v;
    if (u >= 0.0) {
      const double image = gauss(v - u, mp, t) * -std::expm1(-2.0 * u * v / t);
      return image + h_convolution_integral(t, bp, u + v, mp, bm, 0.0, -mm, lp, quad, route).value;
    }
    return h_convolution_integral(t, bm, -u, -mm, bp, v, mp, lp, quad, route).value;
  }
  const double lp = std::log(2.0 * bm) + 2.0 * mm * v;
  if (u > 0.0) return h_convolution_integral(t, bp, u, mp, bm, -v, -mm, lp, quad, route).value;
  const double image = v == 0.0 ? 0.0 : gauss(v - u, mm, t) * -std::expm1(-2.0 * u * v / t);
  return image + h_convolution_integral(t, bm, -v - u, -mm, bp, 0.0, mp, lp, quad, route).value;
}

}  // namespace

double h(double t, double x, double mu) {
  require_positive_time(t);
  if (x == 0.0) return 0.0;
  const double d = x + mu * t;
  return std::fabs(x) / std::sqrt(2.0 * kPi * t * t * t) * std::exp(-d * d / (2.0 * t));
}

double log_h(double t, double x, double mu) {
  if (x == 0.0) return kNegInf;
  const double d = x + mu * t;
  return std::log(std::fabs(x)) - 0.5 * std::log(2.0 * kPi) - 1.5 * std::log(t) - d * d / (2.0 * t);
}

double h_laplace(double q, double x, double mu) {
  if (!(q > 0.0)) throw DomainError("h_laplace: q must be positive");
  if (x == 0.0) return 0.0;
  const double sign = x > 0.0 ? 1.0 : -1.0;
  return std::exp(-(mu + sign * std::sqrt(2.0 * q + mu * mu)) * x);
}

QuadResult h_convolution_integral(double t, double a1, double c1, double m1, double a2, double c2,
                                  double m2, double log_prefactor, const QuadConfig& quad,
                                  IntegralRoute route) {
  require_positive_time(t);
  if (!(a1 > 0.0 && a2 > 0.0 && c1 >= 0.0 && c2 >= 0.0)) {
    throw DomainError("h_convolution_integral: need a1, a2 > 0 and c1, c2 >= 0");
  }
  if (route == IntegralRoute::kernel) {
    const KernelArgs g{a1, c1, m1, a2, c2, m2, log_prefactor};
    auto f = [&](double s1, double s2) { return b_integral_closed(s1, s2, g); };
    return tau_integral(f, t, c1, m1, c2, m2, quad);
  }
  QuadConfig inner = quad;
  inner.rel_tol = 0.1 * quad.rel_tol;
  inner.abs_tol = 0.1 * quad.abs_tol;
  auto outer = [&](double b) {
    const double x1 = a1 * b + c1, x2 = a2 * b + c2;
    auto f = [&](double s1, double s2) {
      const double l = log_h(s1, x1, m1) + log_h(s2, x2, m2);
      return l == kNegInf ? 0.0 : std::exp(log_prefactor + l);
    };
    return tau_integral(f, t, x1, m1, x2, m2, inner).value;
  };
  const double spread = (std::fabs(m1) + std::fabs(m2)) * t;
  auto envelope = [&](double b) {
    const double x = (a1 + a2) * b + c1 + c2;
    const double excess = std::max(0.0, x - spread);
    return std::exp(log_prefactor - excess * excess / (2.0 * t)) * (1.0 + x / std::sqrt(t)) / t;
  };
  return integrate_semi_infinite(outer, 0.0, envelope, quad);
}

double transition_density_origin(double t, double y, const ModelParams& params, const QuadConfig& quad,
                                 IntegralRoute route) {
  return transition_density(t, params.skew_level, y, params, quad, route);
}

double transition_density(double t, double x, double y, const ModelParams& params, const QuadConfig& quad,
                          IntegralRoute route) {
  require_positive_time(t);
  params.validate();
  const double v = params.shift(y);
  if (v == 0.0) throw DomainError("transition density is undefined at the skew level");
  return shifted_density(t, params.shift(x), v, params, quad, route);
}

double transition_density(const DensityEvalRequest& req) {
  return transition_density(req.t, req.x, req.y, req.params, req.quad);
}

double transition_density_origin_limit(double t, bool above, const ModelParams& params,
                                       const QuadConfig& quad) {
  require_positive_time(t);
  params.validate();
  const double bp = 1.0 + params.beta, bm = 1.0 - params.beta;
  const double lp = std::log(2.0 * (above ? bp : bm));
  return h_convolution_integral(t, bp, 0.0, params.mu_plus, bm, 0.0, -params.mu_minus, lp, quad).value;
}

double density_one_drift(double t, double y, double mu, double beta) {
  require_positive_time(t);
  if (!(beta > -1.0 && beta < 1.0)) throw DomainError("beta must lie strictly inside (-1, 1)");
  if (y == 0.0) throw DomainError("density is undefined at the skew level");
  const double side = y > 0.0 ? 1.0 + beta : 1.0 - beta;
  const double sgn = y > 0.0 ? 1.0 : -1.0;
  const double a = (sgn * y + beta * mu * t) / std::sqrt(2.0 * t);
  const double d = y - mu * t;
  const double base = -d * d / (2.0 * t);
  double correction;
  if (a >= 0.0) {
    correction = std::exp(base) * erfcx(a);
  } else {
    correction = std::exp(mu * y * (1.0 + sgn * beta) - 0.5 * mu * mu * t * (1.0 - beta * beta)) * std::erfc(a);
  }
  return side * (std::exp(base) / std::sqrt(2.0 * kPi * t) - 0.5 * beta * mu * correction);
}

double density_alternating(double t, double y, double mu, double beta) {
  require_positive_time(t);
  if (!(beta > -1.0 && beta < 1.0)) throw DomainError("beta must lie strictly inside (-1, 1)");
  if (y == 0.0) throw DomainError("density is undefined at the skew level");
  // The y < 0 branch is the y > 0 branch of the mirrored process.
  const double side = y > 0.0 ? 1.0 + beta : 1.0 - beta;
  const double w = std::fabs(y);
  const double a = (w + mu * t) / std::sqrt(2.0 * t);
  const double d = w - mu * t;
  const double base = -d * d / (2.0 * t);
  double correction;
  if (a >= 0.0) {
    correction = std::exp(base) * erfcx(a);
  } else {
    correction = std::exp(2.0 * mu * w) * std::erfc(a);
  }
  return side * (std::exp(base) / std::sqrt(2.0 * kPi * t) - 0.5 * mu * correction);
}

double cdf_origin(double t, double z, const ModelParams& params, const QuadConfig& quad) {
  require_positive_time(t);
  params.validate();
  const double v = params.shift(z);
  double f;
  if (v <= 0.0) {
    f = cdf_below(t, v, params.mu_minus, params.mu_plus, params.beta, quad);
  } else {
    f = 1.0 - cdf_below(t, -v, -params.mu_plus, -params.mu_minus, -params.beta, quad);
  }
  return std::clamp(f, 0.0, 1.0);
}

double cdf(double t, double x, double z, const ModelParams& params, const QuadConfig& quad) {
  require_positive_time(t);
  params.validate();
  const double u = params.shift(x), v = params.shift(z);
  const double spread = std::max(std::fabs(params.mu_minus), std::fabs(params.mu_plus)) * t;
  auto p = [&](double w) { return w == 0.0 ? 0.0 : shifted_density(t, u, w, params, quad, IntegralRoute::kernel); };
  // s measures the distance from v into the tail; peak is the tail offset of the start.
  const double peak = v <= 0.0 ? v - u : u - v;
  auto envelope = [&](double s) {
    const double excess = std::max(0.0, s - peak - spread);
    return std::exp(-excess * excess / (2.0 * t));
  };
  const std::array<double, 1> cuts = {peak};
  if (v <= 0.0) {
    auto f = [&](double s) { return p(v - s); };
    return std::clamp(integrate_semi_infinite(f, 0.0, envelope, quad, cuts).value, 0.0, 1.0);
  }
  auto f = [&](double s) { return p(v + s); };
  return std::clamp(1.0 - integrate_semi_infinite(f, 0.0, envelope, quad, cuts).value, 0.0, 1.0);
}

double density_jump(double t, const ModelParams& params, const QuadConfig& quad, IntegralRoute route) {
  require_positive_time(t);
  params.validate();
  if (params.beta == 0.0) return 0.0;
  const double bp = 1.0 + params.beta, bm = 1.0 - params.beta;
  const double lp = std::log(4.0 * std::fabs(params.beta));
  const double mag =
      h_convolution_integral(t, bp, 0.0, params.mu_plus, bm, 0.0, -params.mu_minus, lp, quad, route).value;
  return params.beta > 0.0 ? mag : -mag;
}

double stationary_density(double y, const ModelParams& params) {
  params.validate();
  const double mp = params.mu_plus, mm = params.mu_minus;
  if (!(mm > 0.0 && mp < 0.0)) throw DomainError("stationary density needs mu_minus > 0 > mu_plus");
  const double v = params.shift(y);
  if (v == 0.0) throw DomainError("stationary density is undefined at the skew level");
  const double bp = 1.0 + params.beta, bm = 1.0 - params.beta;
  const double d = bp * mm - bm * mp;
  if (v > 0.0) return -2.0 * bp * mp * mm / d * std::exp(2.0 * mp * v);
  return -2.0 * bm * mp * mm / d * std::exp(2.0 * mm * v);
}

double CdfTable::operator()(double z) const {
  if (z <= grid.front()) return cdf.front();
  if (z >= grid.back()) return cdf.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), z);
  const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
  const double hgt = grid[i + 1] - grid[i];
  const double s = (z - grid[i]) / hgt;
  const double s2 = s * s, s3 = s2 * s;
  const double v = (2 * s3 - 3 * s2 + 1) * cdf[i] + (s3 - 2 * s2 + s) * hgt * pdf_right[i] +
                   (-2 * s3 + 3 * s2) * cdf[i + 1] + (s3 - s2) * hgt * pdf_left[i + 1];
  return std::clamp(v, cdf[i], cdf[i + 1]);
}

double CdfTable::linear(double z) const {
  if (z <= grid.front()) return cdf.front();
  if (z >= grid.back()) return cdf.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), z);
  const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
  const double s = (z - grid[i]) / (grid[i + 1] - grid[i]);
  return cdf[i] + s * (cdf[i + 1] - cdf[i]);
}

CdfTable tabulate_cdf(double t, const ModelParams& params, const std::vector<double>& grid,
                      const QuadConfig& quad) {
  require_positive_time(t);
  params.validate();
  if (grid.size() < 2) throw DomainError("CDF grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("CDF grid must be strictly increasing");
  }
  const std::size_t n = grid.size();
  const double a = params.skew_level;
  CdfTable tab;
  tab.grid = grid;
  tab.cdf.assign(n, 0.0);
  tab.pdf_left.assign(n, 0.0);
  tab.pdf_right.assign(n, 0.0);
  auto p = [&](double y) {
    return y == a ? 0.0 : shifted_density(t, 0.0, y - a, params, quad, IntegralRoute::kernel);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i] == a) {
      tab.pdf_left[i] = transition_density_origin_limit(t, false, params, quad);
      tab.pdf_right[i] = transition_density_origin_limit(t, true, params, quad);
    } else {
      tab.pdf_left[i] = tab.pdf_right[i] = p(grid[i]);
    }
  }
  std::vector<double> cell(n - 1);
  const std::array<double, 1> skew = {a};
  for (std::size_t i = 0; i + 1 < n; ++i) cell[i] = integrate(p, grid[i], grid[i + 1], quad, skew).value;

  // Accumulate from the left below the skew level and from the right above it.
  std::vector<double> below(n), above(n);
  below[0] = cdf_origin(t, grid[0], params, quad);
  for (std::size_t i = 1; i < n; ++i) below[i] = below[i - 1] + cell[i - 1];
  above[n - 1] = 1.0 - cdf_origin(t, grid[n - 1], params, quad);
  for (std::size_t i = n - 1; i-- > 0;) above[i] = above[i + 1] + cell[i];
  for (std::size_t i = 0; i < n; ++i) {
    tab.cdf[i] = std::clamp(grid[i] <= a ? below[i] : 1.0 - above[i], 0.0, 1.0);
  }
  for (std::size_t i = 1; i < n; ++i) tab.cdf[i] = std::max(tab.cdf[i], tab.cdf[i - 1]);
  return tab;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw DomainError("linspace needs at least two points");
  std::vector<double> v(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + step * i;
  v.back() = hi;
  return v;
}

}  // namespace rsbm
