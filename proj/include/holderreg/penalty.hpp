#pragma once

#include "holderreg/regularity.hpp"

namespace holderreg::penalty {

/// Constrained problem min f(x) s.t. g_i(x) <= 0 together with the penalty
/// parameters: exponent p and weight r of r * sum (g_i^+)^p.
struct PenaltyProblem {
  ScalarFn f;
  std::vector<ScalarFn> g;
  double p = 1.0;
  double r = 1.0;
  Vec xbar;
};

/// x -> f(x) + r * sum_i (max{0, g_i(x)})^p, +inf where any term is +inf.
ScalarFn penalty_fn(const PenaltyProblem& prob);

/// I(xbar) = { i : |g_i(xbar)| <= tol }.
std::vector<int> active_inequalities(const PenaltyProblem& prob, double tol = 1e-9);

/// Unit directions with f'_q(xbar; x) <= 0 (up to the positivity threshold).
std::vector<Vec> kstar_sample(const PenaltyProblem& prob, HolderOrder q,
                              const DirectionGrid& grid, const ScaleLadder& ladder);

struct PenaltyReport {
  std::vector<int> active;     // I(xbar)
  double b = 0.0;              // min over unit directions of f'_q
  double a = kInf;             // min over K* of sum_i [(g_i^+)'_{q/p}]^p
  double rho0 = 0.0;           // sharpness threshold for the penalty weight
  bool kstar_nonempty = false;
  bool sufficient = false;     // zero-descent directions keep f'_q positive
  std::vector<Vec> kstar;
};

/// Threshold rho0 such that xbar is a q-order sharp minimizer of the penalty
/// function for every r > rho0: rho0 = -b/a when K* is nonempty, else 0.
/// When the sufficiency condition fails (a = 0 with K* nonempty) rho0 is
/// reported as +inf.
PenaltyReport penalty_threshold(const PenaltyProblem& prob, HolderOrder q);

struct PenaltyCheck {
  RegularityReport sharp;      // direct sharp-minimum modulus of the penalty
  LimitEstimate subderiv_norm; // subderivative norm of the penalty
  PenaltyReport threshold;
  bool consistent = false;     // r > rho0 implies a positive sharp verdict
};

/// Computes the q-order sharp-minimum modulus of the penalty function by the
/// direct estimator and by the subderivative norm, and checks consistency
/// with the threshold report.
PenaltyCheck sharp_penalty_check(const PenaltyProblem& prob, HolderOrder q);

}  // namespace holderreg::penalty
