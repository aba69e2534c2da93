#pragma once

#include "expsum.hpp"
#include "rsbm/model.hpp"

namespace rsbm::detail {

/// g1 and g2 at the shifted position u as exponential sums.
ExpSum g1_terms(double u, const Roots& r, const Coeffs& c);
ExpSum g2_terms(double u, const Roots& r, const Coeffs& c);

/// w(x, y) at shifted positions as an exponential sum.
ExpSum w_terms(double u, double v, const Roots& r, const Coeffs& c);

}  // namespace rsbm::detail
