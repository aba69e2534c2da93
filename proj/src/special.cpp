#include "rsbm/special.hpp"

#include <cmath>
#include <limits>

#include "rsbm/errors.hpp"

namespace rsbm {

double erfc(double z) { return std::erfc(z); }

double exp_square(double z) {
  const double hi = z * z;
  const double lo = std::fma(z, z, -hi);
  return std::exp(hi) * (1.0 + lo);
}

namespace {

// Continued fraction 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))) / sqrt(pi),
// evaluated bottom-up. Only used for z >= 25 where a few dozen levels are exact.
double erfcx_continued_fraction(double z) {
  double tail = z;
  for (int k = 60; k >= 1; --k) tail = z + 0.5 * k / tail;
  return 1.0 / (kSqrtPi * tail);
}

}  // namespace

double erfcx(double z) {
  if (std::isnan(z)) return z;
  if (z < 0.0) {
    if (z < -26.7) return std::numeric_limits<double>::infinity();
    return 2.0 * exp_square(z) - erfcx(-z);
  }
  // std::erfc stays relatively accurate until it underflows near z = 26.5.
  if (z < 25.0) return exp_square(z) * std::erfc(z);
  return erfcx_continued_fraction(z);
}

double norm_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double norm_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double log_norm_cdf(double z) {
  if (z > 5.0) return std::log1p(-0.5 * std::erfc(z / kSqrt2));
  if (z > -5.0) return std::log(norm_cdf(z));
  const double w = -z / kSqrt2;
  return std::log(0.5 * erfcx(w)) - w * w;
}

namespace {

// Wichura's AS241 (PPND16), relative accuracy about 1e-16.
double ppnd16(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        ((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
             6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
           1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
         1.3314166789178437745e+2) * r + 3.3871328727963666080e0;
    const double den =
        ((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
             3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
           5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
         4.2313330701600911252e+1) * r + 1.0;
    return q * num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        ((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
             2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
           3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
         4.63033784615654529590e0) * r + 1.42343711074968357734e0;
    const double den =
        ((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
             1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
           6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
         2.05319162663775882187e0) * r + 1.0;
    val = num / den;
  } else {
    r -= 5.0;
    const double num =
        ((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
             1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
           2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
         5.46378491116411436990e0) * r + 6.65790464350110377720e0;
    const double den =
        ((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
             1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
           1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
         5.99832206555887937690e-1) * r + 1.0;
    val = num / den;
  }
  return q < 0.0 ? -val : val;
}

}  // namespace

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("norm_quantile: p must lie in (0, 1)");
  double x = ppnd16(p);
  // One Halley step against norm_cdf, done on the smaller tail.
  const double e = p < 0.5 ? norm_cdf(x) - p : (1.0 - p) - norm_cdf(-x);
  const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  if (std::isfinite(u)) x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double norm_quantile_from_log(double log_p) {
  if (!(log_p < 0.0)) throw DomainError("norm_quantile_from_log: log_p must be negative");
  if (log_p > -700.0) return norm_quantile(std::exp(log_p));
  // Deep lower tail: asymptotic start, then Newton on log Phi.
  const double l = -2.0 * log_p;
  double x = -std::sqrt(l - std::log(l) - std::log(2.0 * kPi));
  for (int i = 0; i < 50; ++i) {
    const double f = log_norm_cdf(x) - log_p;
    // d/dx log Phi(x) = phi(x)/Phi(x) = sqrt(2/pi) / erfcx(-x/sqrt2)
    const double slope = 2.0 * kInvSqrt2Pi / erfcx(-x / kSqrt2);
    const double step = f / slope;
    x -= step;
    if (std::fabs(step) <= 1e-15 * std::fabs(x)) break;
  }
  return x;
}

}  // namespace rsbm
