#pragma once

#include <vector>

#include "holderreg/types.hpp"

namespace holderreg::lp {

/// One inequality row <a, x> <= b.
struct Constraint {
  Vec a;
  double b;
};

enum class Status { Optimal, Infeasible, Unbounded };

std::string to_string(Status s);

struct Solution {
  Status status = Status::Infeasible;
  Vec x;
  double objective = 0.0;
  std::vector<int> active;  // rows tight at the solution
  Vec multipliers;          // lambda >= 0 with c + sum lambda_i a_i = 0
};

/// Minimizes <c, x> over { x : <a_i, x> <= b_i } with free variables, via a
/// dense two-phase tableau (Dantzig pricing, least-index anti-cycling
/// fallback). Deterministic for fixed input.
Solution solve_lp(const Vec& c, const std::vector<Constraint>& rows, double tol = 1e-9);

/// Smallest attainable max-norm residual || sum_j gamma_j g_j - target ||
/// over gamma >= 0 (a phase-1 feasibility value). 0 means the target lies in
/// the cone of the generators.
double cone_residual(const std::vector<Vec>& generators, const Vec& target, double tol = 1e-9);

}  // namespace holderreg::lp
