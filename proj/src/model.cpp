#include "rsbm/model.hpp"

#include <cmath>

#include "rsbm/errors.hpp"
#include "solutions.hpp"

namespace rsbm {

void ModelParams::validate() const {
  if (!std::isfinite(mu_minus) || !std::isfinite(mu_plus) || !std::isfinite(beta) ||
      !std::isfinite(skew_level)) {
    throw DomainError("model parameters must be finite");
  }
  if (!(beta > -1.0 && beta < 1.0)) throw DomainError("beta must lie strictly inside (-1, 1)");
}

namespace {

struct RootPair {
  double delta, rho1, rho2;
};

// rho1 = -(mu + delta), rho2 = delta - mu, with the cancelling root taken from
// rho1 * rho2 = -2q.
RootPair root_pair(double mu, double q) {
  const double delta = std::sqrt(mu * mu + 2.0 * q);
  if (mu >= 0.0) {
    const double rho1 = -(mu + delta);
    return {delta, rho1, 2.0 * q / (delta + mu)};
  }
  const double rho2 = delta - mu;
  return {delta, -2.0 * q / rho2, rho2};
}

}  // namespace

Roots roots(const ModelParams& params, double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("roots: q must be positive");
  params.validate();
  const RootPair m = root_pair(params.mu_minus, q);
  const RootPair p = root_pair(params.mu_plus, q);
  return {m.delta, p.delta, m.rho1, m.rho2, p.rho1, p.rho2};
}

Coeffs coeffs(const ModelParams& params, const Roots& r) {
  const double bp = 1.0 + params.beta;
  const double bm = 1.0 - params.beta;
  const double c1 = (bp * r.rho1_plus - bm * r.rho1_minus) / (bm * 2.0 * r.delta_minus);
  const double c2 = (bp * r.rho2_plus - bm * r.rho2_minus) / (bp * 2.0 * r.delta_plus);
  return {c1, c2};
}

Coeffs coeffs(const ModelParams& params, double q) { return coeffs(params, roots(params, q)); }

FundamentalSolutions fundamental_solutions(double x, const ModelParams& params, double q) {
  const Roots r = roots(params, q);
  const Coeffs c = coeffs(params, r);
  const double u = params.shift(x);
  if (u > 0.0) {
    return {std::exp(r.rho1_plus * u),
            (1.0 - c.c2) * std::exp(r.rho2_plus * u) + c.c2 * std::exp(r.rho1_plus * u)};
  }
  return {c.c1 * std::exp(r.rho2_minus * u) + (1.0 - c.c1) * std::exp(r.rho1_minus * u),
          std::exp(r.rho2_minus * u)};
}

double wronskian_form(double x, double y, const ModelParams& params, double q) {
  const auto gx = fundamental_solutions(x, params, q);
  const auto gy = fundamental_solutions(y, params, q);
  return gx.g2 * gy.g1 - gx.g1 * gy.g2;
}

namespace detail {

ExpSum g1_terms(double u, const Roots& r, const Coeffs& c) {
  ExpSum s;
  if (u > 0.0) {
    s.add(1.0, r.rho1_plus * u);
  } else {
    s.add(c.c1, r.rho2_minus * u);
    s.add(1.0 - c.c1, r.rho1_minus * u);
  }
  return s;
}

ExpSum g2_terms(double u, const Roots& r, const Coeffs& c) {
  ExpSum s;
  if (u > 0.0) {
    s.add(1.0 - c.c2, r.rho2_plus * u);
    s.add(c.c2, r.rho1_plus * u);
  } else {
    s.add(1.0, r.rho2_minus * u);
  }
  return s;
}

ExpSum w_terms(double u, double v, const Roots& r, const Coeffs& c) {
  return g2_terms(u, r, c) * g1_terms(v, r, c) - g1_terms(u, r, c) * g2_terms(v, r, c);
}

}  // namespace detail

}  // namespace rsbm
