#pragma once

#include <functional>
#include <optional>
#include <string>

#include "holderreg/limits.hpp"
#include "holderreg/sampling.hpp"
#include "holderreg/setmap.hpp"
#include "holderreg/simplex.hpp"

namespace holderreg::lsip {

/// Linear semi-infinite program min <c, x> s.t. <a_t, x> <= b_t over an index
/// family: either a finite row list or a parametric curve t -> (a_t, b_t).
struct LsipProblem {
  int n = 2;
  Vec c;
  std::vector<lp::Constraint> finite_rows;
  bool parametric = false;
  std::function<std::pair<Vec, double>(double)> family;
  double t_lo = 0.0;
  double t_hi = 0.0;
  int default_N = 721;
};

/// Finite instantiation used by every analyzer.
struct DiscretizedLsip {
  int n = 2;
  Vec c;
  std::vector<double> t;  // index value per row
  std::vector<lp::Constraint> rows;
  bool from_parametric = false;
  double grid_step = 0.0;
};

/// Uniform discretization with both endpoints included; finite problems pass
/// through unchanged. N >= 2.
DiscretizedLsip discretize(const LsipProblem& p, int N);

/// max over rows of (<a_t, x> - b_t); <= 0 iff x is feasible.
double feasibility_residual(const Vec& x, const DiscretizedLsip& d);

lp::Solution solve(const DiscretizedLsip& d);

struct SlaterReport {
  bool holds = false;
  Vec witness;
  double margin = 0.0;
};

/// Maximizes the uniform slack s over <a_t, x> + s <= b_t inside a box.
SlaterReport slater_check(const DiscretizedLsip& d, double box_bound = 1e3);

/// Default active tolerance: 1e-6 (1 + ||b||_inf), widened by the squared
/// grid step for discretized parametric problems (the true active index lands
/// between grid points).
double default_active_tol(const DiscretizedLsip& d);

/// Rows tight at x within tol (tol < 0 picks the default). x must be
/// feasible within the same tolerance.
std::vector<int> active_indices(const Vec& x, const DiscretizedLsip& d, double tol = -1.0);

/// The convex function max{ <c, x - xbar>, max_t(<a_t, x> - b_t) } whose zero
/// sublevel set is the solution set of the discretized program.
ScalarFn canonical_f(const DiscretizedLsip& d, const Vec& xbar);

struct EncReport {
  bool slater = false;
  bool holds = false;                // the no-subset condition
  std::vector<int> witness_rows;     // violating subset D when holds == false
  std::vector<double> witness_t;
  double witness_residual = 0.0;
};

/// Checks that no active subset D with |D| < n puts -c in cone{a_t, t in D}.
/// Cone membership is tolerant to one grid step for discretized parametric
/// problems.
EncReport enc_check(const DiscretizedLsip& d, const Vec& xbar);

struct CalmnessCertificate {
  double q = 1.0;
  LimitEstimate norm;      // || f'_q(xbar; .) ||_q of the canonical function
  bool certified = false;  // q-order isolated calmness certified iff positive
  std::string outer_norm_condition;  // finite-index-set criterion status
};

/// Certifies q-order isolated calmness of the solution mapping at xbar via
/// positivity of the subderivative norm of the canonical function. Requires
/// the Slater condition and xbar being the unique solution.
CalmnessCertificate calmness_certificate(const DiscretizedLsip& d, const Vec& xbar,
                                         HolderOrder q, int parallel = 1);

/// Scale ladder whose finest rung stays above the discretization resolution.
ScaleLadder lsip_ladder(const DiscretizedLsip& d);

struct EmpiricalSample {
  int profile = 0;
  double delta = 0.0;
  double quotient = 0.0;
  Vec solution;
};

struct EmpiricalCalmness {
  double min_quotient = kInf;
  EmpiricalSample argmin;
  std::vector<EmpiricalSample> samples;
  int skipped = 0;  // perturbed programs that failed to solve
};

/// Brute-force upper bound on the calmness modulus: perturbs b along a fixed
/// family of profiles and records ||delta phi|| / ||x(delta) - xbar||^q.
EmpiricalCalmness empirical_calmness(const DiscretizedLsip& d, const Vec& xbar, HolderOrder q,
                                     const std::vector<double>& deltas = {1e-2, 1e-3, 1e-4,
                                                                          1e-5});

/// The fixed perturbation profile family (8 profiles, sup-norm 1).
std::vector<std::function<double(double)>> perturbation_profiles(const DiscretizedLsip& d);

}  // namespace holderreg::lsip
