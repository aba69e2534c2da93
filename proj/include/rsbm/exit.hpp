#pragma once

#include "rsbm/model.hpp"

namespace rsbm {

/// E_x[exp(-q tau_z); tau_z < tau_y] for y <= x <= z, y < z.
double two_sided_exit_up(double x, double y, double z, const ModelParams& params, double q);

/// E_x[exp(-q tau_y); tau_y < tau_z] for y <= x <= z, y < z.
double two_sided_exit_down(double x, double y, double z, const ModelParams& params, double q);

/// E_x[exp(-q tau_r)] for either ordering of x and r.
double one_sided_hitting_laplace(double x, double r, const ModelParams& params, double q);

struct EscapeProbabilities {
  double p_plus_inf;
  double p_minus_inf;
};

/// Probabilities of drifting off to +inf and -inf; requires mu_plus > 0 > mu_minus.
EscapeProbabilities escape_probabilities(double x, const ModelParams& params);

/// P_x(tau_z < inf). Equal to 1 when mu_minus > 0 > mu_plus; closed forms when
/// mu_plus > 0 > mu_minus; UnsupportedRegime otherwise.
double hitting_probability(double x, double z, const ModelParams& params);

/// E_x[tau_z] for mu_minus > 0 > mu_plus. Returns +inf if either drift is zero;
/// UnsupportedRegime for other sign patterns.
double expected_hitting_time(double x, double z, const ModelParams& params);

}  // namespace rsbm
