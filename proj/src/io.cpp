#include "rsbm/io.hpp"

#include <cmath>

#include "rsbm/errors.hpp"

namespace rsbm {

nlohmann::json fit_to_json(const MixtureTruncatedNormal& mtn, const ModelParams& params, double t) {
  nlohmann::json j;
  j["alpha"] = mtn.alpha;
  j["mu1"] = mtn.mu1;
  j["sigma1"] = mtn.sigma1;
  j["mu2"] = mtn.mu2;
  j["sigma2"] = mtn.sigma2;
  j["objective"] = std::isnan(mtn.objective) ? nlohmann::json(nullptr) : nlohmann::json(mtn.objective);
  j["model"] = {{"mu_minus", params.mu_minus},
                {"mu_plus", params.mu_plus},
                {"beta", params.beta},
                {"skew_level", params.skew_level},
                {"t", t}};
  return j;
}

MixtureTruncatedNormal fit_from_json(const nlohmann::json& j) {
  try {
    MixtureTruncatedNormal m;
    m.alpha = j.at("alpha").get<double>();
    m.mu1 = j.at("mu1").get<double>();
    m.sigma1 = j.at("sigma1").get<double>();
    m.mu2 = j.at("mu2").get<double>();
    m.sigma2 = j.at("sigma2").get<double>();
    if (j.contains("objective") && j["objective"].is_number()) m.objective = j["objective"].get<double>();
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed fit record: ") + e.what());
  }
}

void model_from_json(const nlohmann::json& j, ModelParams& params, double& t) {
  try {
    const auto& m = j.at("model");
    params.mu_minus = m.at("mu_minus").get<double>();
    params.mu_plus = m.at("mu_plus").get<double>();
    params.beta = m.at("beta").get<double>();
    params.skew_level = m.value("skew_level", 0.0);
    t = m.at("t").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model record: ") + e.what());
  }
}

nlohmann::json risk_to_json(const RiskReport& r) {
  auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
  return {{"confidence", r.confidence},   {"var_formula", num(r.var_formula)},
          {"cvar_formula", num(r.cvar_formula)}, {"var_interp", num(r.var_interp)},
          {"var_mc", num(r.var_mc)},          {"cvar_mc", num(r.cvar_mc)}};
}

}  // namespace rsbm
