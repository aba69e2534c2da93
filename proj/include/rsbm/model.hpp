#pragma once

namespace rsbm {

/// Parameters of a refracted skew Brownian motion
///   dX = dB + beta dL^X(t, a) + (mu_plus 1{X > a} + mu_minus 1{X < a}) dt.
/// Every evaluation routine works in coordinates shifted so the skew level sits
/// at the origin; callers pass unshifted positions.
struct ModelParams {
  double mu_minus = 0.0;
  double mu_plus = 0.0;
  double beta = 0.0;
  double skew_level = 0.0;

  /// Throws DomainError unless all fields are finite and -1 < beta < 1.
  void validate() const;

  double shift(double x) const { return x - skew_level; }
};

/// Roots of (1/2) r^2 + mu r - q = 0 for each drift.
struct Roots {
  double delta_minus;
  double delta_plus;
  double rho1_minus;
  double rho2_minus;
  double rho1_plus;
  double rho2_plus;
};

struct Coeffs {
  double c1;
  double c2;
};

struct FundamentalSolutions {
  double g1;  // decreasing solution
  double g2;  // increasing solution
};

Roots roots(const ModelParams& params, double q);
Coeffs coeffs(const ModelParams& params, double q);
Coeffs coeffs(const ModelParams& params, const Roots& r);

FundamentalSolutions fundamental_solutions(double x, const ModelParams& params, double q);

/// w(x, y) = g2(x) g1(y) - g1(x) g2(y).
double wronskian_form(double x, double y, const ModelParams& params, double q);

}  // namespace rsbm
