#include "rsbm/quadrature.hpp"

namespace rsbm {

void QuadConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(semi_infinite_truncation_tail > 0.0)) {
    throw ConfigError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) throw ConfigError("max_subdivisions must be at least 1");
}

}  // namespace rsbm
