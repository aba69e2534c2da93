#include "doctest.h"

#include <cmath>
#include <random>

#include "rsbm/errors.hpp"
#include "rsbm/model.hpp"
#include "rsbm/presets.hpp"

using namespace rsbm;

TEST_CASE("roots at simple parameters") {
  auto r = roots(ModelParams{0, 0, 0, 0}, 0.5);
  CHECK(r.delta_minus == doctest::Approx(1.0));
  CHECK(r.delta_plus == doctest::Approx(1.0));
  CHECK(r.rho1_minus == doctest::Approx(-1.0));
  CHECK(r.rho2_minus == doctest::Approx(1.0));
  CHECK(r.rho1_plus == doctest::Approx(-1.0));
  CHECK(r.rho2_plus == doctest::Approx(1.0));

  r = roots(ModelParams{0, 1, 0, 0}, 0.5);
  CHECK(r.delta_plus == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.rho1_plus == doctest::Approx(-1.0 - std::sqrt(2.0)));
  CHECK(r.rho2_plus == doctest::Approx(-1.0 + std::sqrt(2.0)));
}

TEST_CASE("roots solve the characteristic quadratic") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mu(-5, 5), lq(-6, 4);
  for (int i = 0; i < 200; ++i) {
    ModelParams p{mu(rng), mu(rng), 0.1, 0.0};
    const double q = std::exp(lq(rng));
    const auto r = roots(p, q);
    CHECK(std::fabs(r.rho1_minus * r.rho2_minus + 2.0 * q) <= 1e-12 * std::max(1.0, q));
    CHECK(std::fabs(r.rho1_plus * r.rho2_plus + 2.0 * q) <= 1e-12 * std::max(1.0, q));
    for (double x : {r.rho1_minus, r.rho2_minus}) {
      CHECK(0.5 * x * x + p.mu_minus * x - q == doctest::Approx(0.0).scale(q + x * x));
    }
    for (double x : {r.rho1_plus, r.rho2_plus}) {
      CHECK(0.5 * x * x + p.mu_plus * x - q == doctest::Approx(0.0).scale(q + x * x));
    }
  }
}

TEST_CASE("coefficients") {
  const auto c = coeffs(ModelParams{0.4, 0.4, 0.0, 0.0}, 0.8);
  CHECK(std::fabs(c.c1) < 1e-15);
  CHECK(std::fabs(c.c2) < 1e-15);

  const ModelParams m2{2, -4, 0.7, 0};
  const auto c2 = coeffs(m2, 1.0);
  CHECK(std::isfinite(c2.c1));
  CHECK(std::isfinite(c2.c2));
  for (double q = 1e-3; q <= 1e3; q *= 1.5) CHECK(std::fabs(coeffs(m2, q).c2) < 10.0);
}

TEST_CASE("fundamental solutions") {
  const ModelParams p{0.3, -1.1, 0.3, 0.7};
  auto g = fundamental_solutions(0.7, p, 1.3);
  CHECK(g.g1 == doctest::Approx(1.0));
  CHECK(g.g2 == doctest::Approx(1.0));

  g = fundamental_solutions(1.0, ModelParams{}, 0.5);
  CHECK(g.g1 == doctest::Approx(std::exp(-1.0)));
  CHECK(g.g2 == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("fundamental solutions satisfy the flux condition at the skew level") {
  const double h = 1e-5;
  for (const auto& pr : presets()) {
    ModelParams p = pr.params;
    p.beta = 0.3;
    const double q = 0.9;
    const double a = p.skew_level;
    const auto g0 = fundamental_solutions(a, p, q);
    const auto gp = fundamental_solutions(a + h, p, q);
    const auto gpp = fundamental_solutions(a + 2 * h, p, q);
    const auto gm = fundamental_solutions(a - h, p, q);
    const auto gmm = fundamental_solutions(a - 2 * h, p, q);
    auto right = [&](double f0, double f1, double f2) { return (-3 * f0 + 4 * f1 - f2) / (2 * h); };
    auto left = [&](double f0, double f1, double f2) { return (3 * f0 - 4 * f1 + f2) / (2 * h); };
    const double flux1 = (1 + p.beta) * right(g0.g1, gp.g1, gpp.g1) - (1 - p.beta) * left(g0.g1, gm.g1, gmm.g1);
    const double flux2 = (1 + p.beta) * right(g0.g2, gp.g2, gpp.g2) - (1 - p.beta) * left(g0.g2, gm.g2, gmm.g2);
    CHECK(std::fabs(flux1) < 1e-6);
    CHECK(std::fabs(flux2) < 1e-6);
  }
}

TEST_CASE("fundamental solutions solve the generator equation away from the level") {
  const ModelParams p{2, -4, 0.7, 0};
  const double q = 1.0, h = 1e-4;
  for (double x : {-1.5, -0.3, 0.4, 1.2}) {
    const double mu = x < 0 ? p.mu_minus : p.mu_plus;
    const auto gm = fundamental_solutions(x - h, p, q);
    const auto g0 = fundamental_solutions(x, p, q);
    const auto gp = fundamental_solutions(x + h, p, q);
    const double lhs = 0.5 * (gp.g1 - 2 * g0.g1 + gm.g1) / (h * h) + mu * (gp.g1 - gm.g1) / (2 * h);
    CHECK(lhs == doctest::Approx(q * g0.g1).epsilon(1e-5));
    const double lhs2 = 0.5 * (gp.g2 - 2 * g0.g2 + gm.g2) / (h * h) + mu * (gp.g2 - gm.g2) / (2 * h);
    CHECK(lhs2 == doctest::Approx(q * g0.g2).epsilon(1e-5));
  }
}

TEST_CASE("wronskian form") {
  const auto m1 = preset("model1").params;
  for (double x : {-2.0, -0.1, 0.0, 3.0}) CHECK(wronskian_form(x, x, m1, 1.0) == 0.0);
  CHECK(wronskian_form(1, 0, m1, 1.0) == doctest::Approx(-wronskian_form(0, 1, m1, 1.0)));
  for (double x : {-1.0, 0.3, 2.0})
    for (double y : {-0.5, 0.2, 1.7}) {
      CHECK(wronskian_form(x, y, ModelParams{}, 0.5) == doctest::Approx(2.0 * std::sinh(x - y)).epsilon(1e-13));
    }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((ModelParams{0, 0, 1.0, 0}).validate(), DomainError);
  CHECK_THROWS_AS((ModelParams{0, 0, -1.5, 0}).validate(), DomainError);
  CHECK_THROWS_AS((ModelParams{NAN, 0, 0, 0}).validate(), DomainError);
  CHECK_NOTHROW((ModelParams{-1, 2, 0.99, 4}).validate());
  CHECK_THROWS_AS(roots(ModelParams{}, 0.0), DomainError);
  CHECK_THROWS_AS(preset("model9"), ConfigError);
}
