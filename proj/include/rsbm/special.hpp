#pragma once

namespace rsbm {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Complementary error function.
double erfc(double z);

/// Scaled complementary error function exp(z^2) * erfc(z), free of overflow for
/// large positive z. Returns +inf once exp(z^2) overflows for very negative z.
double erfcx(double z);

/// exp(z^2) with the square split so that the rounding of z*z does not leak
/// into the result for large |z|.
double exp_square(double z);

double norm_pdf(double z);
double norm_cdf(double z);

/// log(norm_cdf(z)), accurate deep into the lower tail.
double log_norm_cdf(double z);

/// Inverse of norm_cdf on (0, 1). Throws DomainError outside the open interval.
double norm_quantile(double p);

/// Inverse of norm_cdf given log(p), usable where p itself underflows.
double norm_quantile_from_log(double log_p);

}  // namespace rsbm
