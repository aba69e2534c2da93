#include "rsbm/presets.hpp"

#include "rsbm/errors.hpp"

namespace rsbm {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"model1", {-0.1, 0.1, 0.3, 0.0}, 2.0},
      {"model2", {2.0, -4.0, 0.7, 0.0}, 2.0},
      {"model3", {1.0, 3.0, -0.1, 0.0}, 1.0},
      {"model4", {-2.0, -3.0, 0.9, 0.0}, 3.0},
  };
  return table;
}

Preset preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown model preset '" + name + "' (expected model1..model4)");
}

}  // namespace rsbm
