#pragma once

#include "rsbm/model.hpp"
#include "rsbm/quadrature.hpp"

namespace rsbm {

/// q-potential density of X started at the skew level, evaluated at y != a.
double potential_density_origin(double y, const ModelParams& params, double q);

/// q-potential density of X started at x, evaluated at y != a.
double potential_density(double x, double y, const ModelParams& params, double q);

/// Potential density killed on leaving (b_minus, b_plus); requires
/// b_minus < a < b_plus and b_minus <= x <= b_plus.
double potential_density_two_barriers(double x, double y, double b_minus, double b_plus,
                                      const ModelParams& params, double q);

/// Potential density killed at the first passage below b_minus; requires x >= b_minus.
double potential_density_one_barrier(double x, double y, double b_minus, const ModelParams& params,
                                     double q);

/// Numerical transform int_0^t_max q exp(-q t) p(t; a, y) dt of the transition
/// density. Test oracle; requires q * t_max >= 25.
double laplace_density_oracle(double y, const ModelParams& params, double q, double t_max,
                              const QuadConfig& quad = {});

}  // namespace rsbm
