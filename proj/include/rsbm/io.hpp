#pragma once

#include <json.hpp>

#include "rsbm/model.hpp"
#include "rsbm/risk.hpp"
#include "rsbm/sampler.hpp"

namespace rsbm {

/// Fit record: alpha, mu1, sigma1, mu2, sigma2, objective, model {mu_minus, mu_plus, beta, skew_level, t}.
nlohmann::json fit_to_json(const MixtureTruncatedNormal& mtn, const ModelParams& params, double t);

/// Reads the mixture part of a fit record; the model block is optional.
MixtureTruncatedNormal fit_from_json(const nlohmann::json& j);

/// Reads the model block of a fit record into params and t.
void model_from_json(const nlohmann::json& j, ModelParams& params, double& t);

nlohmann::json risk_to_json(const RiskReport& r);

}  // namespace rsbm
