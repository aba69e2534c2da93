#pragma once

#include <string>
#include <vector>

#include "rsbm/model.hpp"

namespace rsbm {

struct Preset {
  std::string name;
  ModelParams params;
  double t;
};

/// The four reference models model1..model4. Throws ConfigError for other names.
Preset preset(const std::string& name);
const std::vector<Preset>& presets();

}  // namespace rsbm
