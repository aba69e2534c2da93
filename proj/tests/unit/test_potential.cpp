#include "doctest.h"

#include <cmath>

#include "rsbm/errors.hpp"
#include "rsbm/exit.hpp"
#include "rsbm/potential.hpp"
#include "rsbm/presets.hpp"
#include "rsbm/quadrature.hpp"

using namespace rsbm;

namespace {

double mass(const std::function<double(double)>& f, double lo, double mid, double hi) {
  QuadConfig cfg;
  cfg.rel_tol = 1e-12;
  if (std::isinf(lo) && std::isinf(hi)) {
    return integrate_semi_infinite([&](double s) { return f(mid - s); }, 0.0, cfg).value +
           integrate_semi_infinite([&](double s) { return f(mid + s); }, 0.0, cfg).value;
  }
  return integrate(f, lo, mid, cfg).value + integrate(f, mid, hi, cfg).value;
}

}  // namespace

TEST_CASE("driftless symmetric case is the Laplace kernel") {
  for (double q : {0.3, 1.0, 4.0})
    for (double y : {-2.0, -0.4, 0.1, 1.5}) {
      const double ref = std::sqrt(q / 2) * std::exp(-std::sqrt(2 * q) * std::fabs(y));
      CHECK(potential_density_origin(y, ModelParams{}, q) == doctest::Approx(ref).epsilon(1e-14));
    }
}

TEST_CASE("potential densities are normalised") {
  for (const auto& pr : presets())
    for (double q : {0.5, 1.0, 2.0}) {
      const auto& p = pr.params;
      const double m = mass([&](double y) { return potential_density_origin(y, p, q); }, -INFINITY, 0, INFINITY);
      CHECK(m == doctest::Approx(1.0).epsilon(1e-10));
    }
  const auto p2 = preset("model2").params;
  for (double x : {-1.0, 0.5}) {
    const double m = mass([&](double y) { return potential_density(x, y, p2, 1.0); }, -INFINITY, 0, INFINITY);
    CHECK(m == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("general start reduces to the origin formula") {
  for (const auto& pr : presets())
    for (double y : {-1.3, -0.2, 0.6, 2.5}) {
      const double a = pr.params.skew_level;
      CHECK(potential_density(a, y, pr.params, 1.7) ==
            doctest::Approx(potential_density_origin(y, pr.params, 1.7)).epsilon(1e-12));
    }
}

TEST_CASE("equal drifts without skew give the drifted Brownian resolvent") {
  const double mu = 0.5, q = 1.0;
  const double delta = std::sqrt(mu * mu + 2 * q);
  const ModelParams p{mu, mu, 0.0, 0.0};
  for (auto [x, y] : {std::pair{1.0, 2.0}, {1.0, 0.3}, {-1.0, 0.5}, {-0.5, -2.0}, {2.0, -1.0}}) {
    const double ref = q / delta * std::exp(mu * (y - x) - delta * std::fabs(y - x));
    CHECK(potential_density(x, y, p, q) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("two barriers") {
  const auto p = preset("model1").params;
  for (double y : {-1.5, -0.2, 0.4, 1.9}) {
    CHECK(std::fabs(potential_density_two_barriers(-2.0, y, -2.0, 2.0, p, 1.0)) < 1e-14);
    CHECK(std::fabs(potential_density_two_barriers(2.0, y, -2.0, 2.0, p, 1.0)) < 1e-14);
  }
  const double m = mass([&](double y) { return potential_density_two_barriers(0.0, y, -2.0, 2.0, p, 1.0); }, -2, 0, 2);
  const double ref = 1.0 - two_sided_exit_down(0.0, -2.0, 2.0, p, 1.0) - two_sided_exit_up(0.0, -2.0, 2.0, p, 1.0);
  CHECK(m == doctest::Approx(ref).epsilon(1e-6));
  for (double y : {-3.0, 2.5}) CHECK(std::fabs(potential_density_two_barriers(0.3, y, -2.0, 2.0, p, 1.0)) < 1e-12);
  CHECK_THROWS_AS(potential_density_two_barriers(0.0, 0.5, 1.0, 2.0, p, 1.0), DomainError);
}

TEST_CASE("one barrier") {
  const auto p = preset("model2").params;
  for (double y : {-0.5, 0.3, 1.0}) CHECK(std::fabs(potential_density_one_barrier(-1.0, y, -1.0, p, 1.0)) < 1e-14);
  for (double y : {-1.0, 0.3, 2.0}) {
    CHECK(potential_density_one_barrier(0.5, y, -30.0, p, 1.0) ==
          doctest::Approx(potential_density(0.5, y, p, 1.0)).epsilon(1e-8));
  }
  const double v = potential_density_one_barrier(0.5, 0.3, -1.0, p, 1.0);
  CHECK(v >= 0.0);
  CHECK(v <= potential_density(0.5, 0.3, p, 1.0));
}

TEST_CASE("numerical transform of the transition density") {
  const double ref = std::sqrt(0.5) * std::exp(-std::sqrt(2.0));
  CHECK(laplace_density_oracle(1.0, ModelParams{}, 1.0, 40.0) == doctest::Approx(ref).epsilon(1e-4));
  const auto m1 = preset("model1").params;
  CHECK(laplace_density_oracle(-0.5, m1, 1.0, 40.0) ==
        doctest::Approx(potential_density_origin(-0.5, m1, 1.0)).epsilon(1e-4));
  const auto m3 = preset("model3").params;
  CHECK(laplace_density_oracle(1.0, m3, 2.0, 20.0) ==
        doctest::Approx(potential_density_origin(1.0, m3, 2.0)).epsilon(1e-4));
  CHECK_THROWS_AS(laplace_density_oracle(1.0, m1, 1.0, 5.0), DomainError);
}

TEST_CASE("domain checks") {
  const auto p = preset("model1").params;
  CHECK_THROWS_AS(potential_density_origin(0.0, p, 1.0), DomainError);
  CHECK_THROWS_AS(potential_density_origin(1.0, p, 0.0), DomainError);
}
