#include "doctest.h"

#include <cmath>
#include <random>

#include "rsbm/density.hpp"
#include "rsbm/errors.hpp"
#include "rsbm/presets.hpp"
#include "rsbm/special.hpp"

using namespace rsbm;

namespace {

double gauss(double x, double var) { return std::exp(-0.5 * x * x / var) / std::sqrt(2.0 * kPi * var); }

double integral(const std::function<double(double)>& f, double lo, double hi, double split) {
  QuadConfig cfg;
  cfg.rel_tol = 1e-11;
  cfg.abs_tol = 1e-14;
  const double bp[] = {split};
  return integrate(f, lo, hi, cfg, bp).value;
}

// Independent closed form of the equal-drift jump, evaluated without erfcx.
double equal_drift_jump(double beta, double mu, double t) {
  const double a = beta * mu * std::sqrt(t / 2.0);
  return std::sqrt(2.0) * beta / std::sqrt(kPi * t) * std::exp(-mu * mu * t / 2.0) *
         (1.0 - 0.5 * beta * mu * std::sqrt(2.0 * kPi * t) * std::exp(a * a) * std::erfc(a));
}

}  // namespace

TEST_CASE("first-passage kernel") {
  CHECK(h(1.3, 0.0, 0.4) == 0.0);
  CHECK(h(1.0, 1.0, 0.0) == doctest::Approx(std::exp(-0.5) / std::sqrt(2 * kPi)).epsilon(1e-15));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> t(0.05, 4), x(-3, 3), m(-2, 2);
  for (int i = 0; i < 100; ++i) {
    const double tt = t(rng), xx = x(rng), mm = m(rng);
    CHECK(h(tt, xx, mm) == doctest::Approx(h(tt, -xx, -mm)).epsilon(1e-13));
    CHECK(h(tt, xx, -mm) == doctest::Approx(std::exp(2 * mm * xx) * h(tt, xx, mm)).epsilon(1e-13));
    if (xx != 0.0) CHECK(std::exp(log_h(tt, xx, mm)) == doctest::Approx(h(tt, xx, mm)).epsilon(1e-13));
  }
}

TEST_CASE("Laplace transform of the kernel") {
  CHECK(h_laplace(0.5, 1.0, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  const double q = 1.0, x = 0.7, mu = -0.4;
  const double num = integral([&](double t) { return t > 0 ? std::exp(-q * t) * h(t, x, mu) : 0.0; }, 0.0, 50.0, 0.5);
  CHECK(num == doctest::Approx(h_laplace(q, x, mu)).epsilon(1e-8));
}

TEST_CASE("kernel convolution identity") {
  const double t = 2, x1 = 0.5, x2 = 0.8, mu = 0.3;
  const double num = integral([&](double s) { return (s > 0 && s < t) ? h(t - s, x1, mu) * h(s, x2, mu) : 0.0; }, 0, t, 1.0);
  CHECK(num == doctest::Approx(h(t, x1 + x2, mu)).epsilon(1e-9));
}

TEST_CASE("kernel and nested routes agree") {
  QuadConfig cfg;
  cfg.rel_tol = 1e-10;
  const double k = h_convolution_integral(1.7, 1.0, 0.3, 0.4, 0.6, 0.2, -1.1, 0.0, cfg, IntegralRoute::kernel).value;
  const double n = h_convolution_integral(1.7, 1.0, 0.3, 0.4, 0.6, 0.2, -1.1, 0.0, cfg, IntegralRoute::nested).value;
  CHECK(k == doctest::Approx(n).epsilon(1e-8));
  for (const auto& pr : presets())
    for (double y : {-1.2, 0.4}) {
      const double a = pr.params.skew_level;
      CHECK(transition_density_origin(pr.t, a + y, pr.params, {}, IntegralRoute::kernel) ==
            doctest::Approx(transition_density_origin(pr.t, a + y, pr.params, {}, IntegralRoute::nested)).epsilon(1e-8));
    }
}

TEST_CASE("reductions to Brownian densities") {
  CHECK(transition_density_origin(2.0, 1.0, ModelParams{0.5, 0.5, 0, 0}) == doctest::Approx(1.0 / std::sqrt(4 * kPi)).epsilon(1e-9));
  const ModelParams zero{};
  CHECK(transition_density(1.0, 0.3, -0.4, zero) == doctest::Approx(gauss(-0.7, 1.0)).epsilon(1e-9));
  for (auto [x, y] : {std::pair{0.6, 1.1}, {0.6, -0.9}, {-0.8, 0.5}, {-0.8, -1.7}}) {
    CHECK(transition_density(1.3, x, y, zero) == doctest::Approx(gauss(y - x, 1.3)).epsilon(1e-9));
  }
  const ModelParams drift{-0.7, -0.7, 0, 0};
  for (auto [x, y] : {std::pair{0.6, 1.1}, {0.6, -0.9}, {-0.8, 0.5}, {-0.8, -1.7}}) {
    CHECK(transition_density(1.3, x, y, drift) == doctest::Approx(gauss(y - x + 0.7 * 1.3, 1.3)).epsilon(1e-9));
  }
}

TEST_CASE("general start at the level matches the origin density") {
  const auto p = preset("model2");
  for (double y : {-0.7, 0.7}) {
    CHECK(transition_density(2.0, 0.0, y, p.params) == doctest::Approx(transition_density_origin(2.0, y, p.params)).epsilon(1e-8));
  }
}

TEST_CASE("one-drift closed form") {
  for (double y : {-1.5, -0.3, 0.2, 2.0}) {
    const double walsh = (y > 0 ? 1.3 : 0.7) * gauss(y, 1.7);
    CHECK(density_one_drift(1.7, y, 0.0, 0.3) == doctest::Approx(walsh).epsilon(1e-13));
    CHECK(density_one_drift(1.7, y, 0.6, 0.0) == doctest::Approx(gauss(y - 0.6 * 1.7, 1.7)).epsilon(1e-13));
  }
  for (double y : {-3.0, -1.0, -0.25, 0.25, 1.0, 3.0}) {
    CHECK(std::fabs(density_one_drift(1.5, y, 0.8, 0.3) - transition_density_origin(1.5, y, ModelParams{0.8, 0.8, 0.3, 0})) < 1e-6);
  }
}

TEST_CASE("alternating-drift closed form") {
  for (double y : {-1.0, 0.4}) CHECK(density_alternating(1.2, y, 0.0, 0.0) == doctest::Approx(gauss(y, 1.2)).epsilon(1e-13));
  for (double y : {-2.0, -0.5, 0.5, 2.0}) {
    CHECK(std::fabs(density_alternating(2.0, y, 1.0, 0.5) - transition_density_origin(2.0, y, ModelParams{-1, 1, 0.5, 0})) < 1e-6);
  }
  const double up = integral([](double y) { return y > 0 ? density_alternating(1.0, y, 0.7, 0.0) : 0.0; }, 0, 30, 1.0);
  const double down = integral([](double y) { return y < 0 ? density_alternating(1.0, y, 0.7, 0.0) : 0.0; }, -30, 0, -1.0);
  CHECK(up == doctest::Approx(1.0 - down).epsilon(1e-6));
}

TEST_CASE("normalisation") {
  const auto m1 = preset("model1");
  const double n1 = integral([&](double y) { return y == 0 ? 0.0 : transition_density_origin(2.0, y, m1.params); }, -20, 20, 0.0);
  CHECK(n1 == doctest::Approx(1.0).epsilon(1e-6));
  const auto m3 = preset("model3");
  const double n3 = integral([&](double y) { return y == 0 ? 0.0 : transition_density(1.0, -1.0, y, m3.params); }, -20, 20, 0.0);
  CHECK(n3 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Chapman-Kolmogorov") {
  const ModelParams p{0.5, -1.0, 0.4, 0.0};
  const double y = 0.6;
  const double lhs = transition_density_origin(1.5, y, p);
  QuadConfig cfg;
  cfg.rel_tol = 1e-9;
  const double bp[] = {0.0, y};
  const double rhs = integrate(
      [&](double z) { return z == 0 ? 0.0 : transition_density_origin(0.7, z, p) * transition_density(0.8, z, y, p); },
      -15, 15, cfg, bp).value;
  CHECK(rhs == doctest::Approx(lhs).epsilon(1e-6));
}

TEST_CASE("jump at the skew level") {
  const auto m1 = preset("model1");
  const double diff = transition_density_origin(2.0, 1e-6, m1.params) - transition_density_origin(2.0, -1e-6, m1.params);
  CHECK(diff == doctest::Approx(density_jump(2.0, m1.params)).epsilon(1e-5));
  CHECK(density_jump(1.0, ModelParams{0.5, -0.2, 0.0, 0.0}) == doctest::Approx(0.0).scale(1.0));
  for (double beta : {-0.5, 0.2, 0.9}) {
    CHECK(density_jump(1.3, ModelParams{0, 0, beta, 0}) == doctest::Approx(std::sqrt(2.0) * beta / std::sqrt(kPi * 1.3)).epsilon(1e-10));
  }
  CHECK(density_jump(1.5, ModelParams{0.6, 0.6, 0.4, 0}) == doctest::Approx(equal_drift_jump(0.4, 0.6, 1.5)).epsilon(1e-8));
  const double lim = transition_density_origin_limit(2.0, true, m1.params) - transition_density_origin_limit(2.0, false, m1.params);
  CHECK(lim == doctest::Approx(density_jump(2.0, m1.params)).epsilon(1e-9));
}

TEST_CASE("CDF from the skew level") {
  const auto m1 = preset("model1");
  CHECK(cdf_origin(2.0, -20.0, m1.params) <= 1e-8);
  CHECK(cdf_origin(2.0, 20.0, m1.params) >= 1 - 1e-8);
  for (double beta : {-0.4, 0.3}) CHECK(cdf_origin(1.1, 0.0, ModelParams{0, 0, beta, 0}) == doctest::Approx((1 - beta) / 2).epsilon(1e-9));
  const auto m2 = preset("model2");
  // The two branch formulas meet at the level; +/-eps moves only by eps times the density.
  for (const auto& pr : presets()) {
    CHECK(std::fabs(cdf_origin(pr.t, 1e-12, pr.params) - cdf_origin(pr.t, 0.0, pr.params)) < 1e-9);
  }
  const double eps = 1e-6;
  const double step = eps * (transition_density_origin_limit(2.0, true, m2.params) +
                             transition_density_origin_limit(2.0, false, m2.params));
  CHECK(cdf_origin(2.0, eps, m2.params) - cdf_origin(2.0, -eps, m2.params) == doctest::Approx(step).epsilon(1e-4));
  for (double z : {-1.0, 0.5}) {
    const double num = integral([&](double y) { return y == 0 ? 0.0 : transition_density_origin(2.0, y, m2.params); }, -20, z, 0.0);
    CHECK(cdf_origin(2.0, z, m2.params) == doctest::Approx(num).epsilon(1e-8));
  }
}

TEST_CASE("CDF matches the integrated density for every drift sign pattern") {
  for (double mm : {-2.0, 1.5})
    for (double mp : {-3.0, 2.5})
      for (double beta : {-0.6, 0.9}) {
        const ModelParams p{mm, mp, beta, 0.0};
        auto dens = [&](double y) { return y == 0 ? 0.0 : transition_density_origin(1.5, y, p); };
        for (double z : {-0.7, 0.4}) {
          const double below = integral(dens, -30, std::min(z, 0.0), -1.0) + (z > 0 ? integral(dens, 0, z, z / 2) : 0.0);
          CHECK(cdf_origin(1.5, z, p) == doctest::Approx(below).epsilon(1e-8));
        }
      }
}

TEST_CASE("CDF from a general start") {
  const auto m3 = preset("model3");
  const double num = integral([&](double y) { return y == 0 ? 0.0 : transition_density(1.0, 0.5, y, m3.params); }, -20, 0.8, 0.0);
  CHECK(cdf(1.0, 0.5, 0.8, m3.params) == doctest::Approx(num).epsilon(1e-8));
  CHECK(cdf(1.0, 0.0, 0.8, m3.params) == doctest::Approx(cdf_origin(1.0, 0.8, m3.params)).epsilon(1e-8));
}

TEST_CASE("tabulated CDF") {
  const auto m4 = preset("model4");
  const auto grid = linspace(-20, 20, 801);
  const auto tab = tabulate_cdf(m4.t, m4.params, grid);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(tab.cdf[i] >= tab.cdf[i - 1]);
  for (double z : {-4.0, -1.0, 0.05, 2.0}) {
    const double a = m4.params.skew_level;
    CHECK(tab(z) == doctest::Approx(cdf_origin(m4.t, a + z, m4.params)).epsilon(1e-7));
  }
  CHECK(tab(grid[37]) == tab.cdf[37]);
  CHECK(tab.linear(grid[37]) == tab.cdf[37]);
  CHECK_THROWS_AS(tabulate_cdf(1.0, m4.params, {0.0, -1.0}), DomainError);
}

TEST_CASE("stationary density") {
  for (double y : {-1.0, 0.3, 2.0}) CHECK(stationary_density(y, ModelParams{1, -1, 0, 0}) == doctest::Approx(std::exp(-2 * std::fabs(y))).epsilon(1e-14));
  const auto m2 = preset("model2");
  const double mass = integral([&](double y) { return y == 0 ? 0.0 : stationary_density(y, m2.params); }, -30, 30, 0.0);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  for (double y : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
    CHECK(std::fabs(transition_density_origin(50.0, y, m2.params) - stationary_density(y, m2.params)) < 1e-3);
  }
  CHECK_THROWS_AS(stationary_density(0.5, preset("model4").params), DomainError);
}

TEST_CASE("domain checks") {
  const auto m1 = preset("model1");
  CHECK_THROWS_AS(transition_density_origin(0.0, 1.0, m1.params), DomainError);
  CHECK_THROWS_AS(transition_density_origin(1.0, m1.params.skew_level, m1.params), DomainError);
  CHECK_THROWS_AS(density_one_drift(1.0, 0.0, 0.1, 0.2), DomainError);
}
