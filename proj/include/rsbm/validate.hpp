#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsbm/model.hpp"
#include "rsbm/quadrature.hpp"

namespace rsbm {

enum class CheckStatus { pass, fail, skipped };

struct Check {
  std::string name;
  CheckStatus status;
  double measured;
  double threshold;
  std::string note;
};

struct ValidationOptions {
  std::int64_t ks_samples = 100000;
  std::int64_t walk_paths = 100000;
  std::int64_t walk_steps = 4000;
  std::uint64_t seed = 0;
};

/// Runs the numerical self-checks for one model. Checks whose regime does not
/// apply (stationary limit without inward drifts, escape without outward ones,
/// closed forms for other drift patterns) come back as skipped.
std::vector<Check> validation_battery(const ModelParams& params, double t, const QuadConfig& quad = {},
                                      const ValidationOptions& opts = {});

bool all_passed(const std::vector<Check>& checks);

const char* to_string(CheckStatus s);

}  // namespace rsbm
