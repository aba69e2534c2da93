#include "doctest.h"

#include <cmath>

#include "rsbm/errors.hpp"
#include "rsbm/special.hpp"

using namespace rsbm;

namespace {

double bisect_quantile(double p) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (norm_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("erfc and erfcx fixed points") {
  CHECK(rsbm::erfc(0.0) == 1.0);
  CHECK(erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(erfcx(10.0) == doctest::Approx(0.0561409927438225858575).epsilon(1e-14));
  CHECK(norm_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("erfcx agrees with exp(z^2) erfc(z) where both are representable") {
  for (double z = -5.0; z <= 5.0; z += 0.37) {
    CHECK(erfcx(z) == doctest::Approx(std::exp(z * z) * std::erfc(z)).epsilon(1e-13));
  }
}

TEST_CASE("erfcx asymptotics") {
  // 1/(z sqrt(pi)) * (1 - 1/(2z^2) + 3/(4z^4))
  for (double z : {50.0, 200.0, 1e4}) {
    const double z2 = z * z;
    const double ref = (1.0 - 0.5 / z2 + 0.75 / (z2 * z2) - 1.875 / (z2 * z2 * z2)) / (z * kSqrtPi);
    CHECK(erfcx(z) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK(std::isinf(erfcx(-30.0)));
}

TEST_CASE("norm_quantile against bisection on norm_cdf") {
  CHECK(norm_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  for (double p : {1e-300, 1e-20, 1e-8, 0.01, 0.2, 0.5, 0.77, 0.999}) {
    CHECK(norm_quantile(p) == doctest::Approx(bisect_quantile(p)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(norm_quantile(0.0), DomainError);
  CHECK_THROWS_AS(norm_quantile(1.0), DomainError);
}

TEST_CASE("quantile inverts cdf on [-6, 6] up to the rounding of the cdf") {
  for (double z = -6.0; z <= 6.0; z += 0.01) {
    const double p = norm_cdf(z);
    const double spread = 0.5 * (std::nextafter(p, 2.0) - p) / norm_pdf(z);
    CHECK(std::fabs(norm_quantile(p) - z) <= 1e-9 + 1.01 * spread);
    if (z <= 0.0) CHECK(std::fabs(norm_quantile(p) - z) < 1e-13);
  }
}

TEST_CASE("log_norm_cdf and quantile from log in the deep tail") {
  // log Phi(z) ~ -z^2/2 - log(-z) - log(sqrt(2 pi)) - 1/z^2
  const double z = -60.0;
  const double ref = -0.5 * z * z - std::log(-z) - std::log(kSqrt2Pi) + std::log1p(-1.0 / (z * z) + 3.0 / std::pow(z, 4));
  CHECK(log_norm_cdf(z) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(norm_quantile_from_log(log_norm_cdf(-45.0)) == doctest::Approx(-45.0).epsilon(1e-10));
  CHECK(norm_quantile_from_log(std::log(0.3)) == doctest::Approx(norm_quantile(0.3)).epsilon(1e-12));
}

TEST_CASE("norm_pdf") {
  CHECK(norm_pdf(0.0) == doctest::Approx(kInvSqrt2Pi));
  CHECK(norm_pdf(1.3) == doctest::Approx(std::exp(-0.845) / std::sqrt(2.0 * kPi)).epsilon(1e-15));
}
