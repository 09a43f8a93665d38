#pragma once

#include <optional>

#include "holderreg/graphical.hpp"
#include "holderreg/subderivative.hpp"

namespace holderreg {

enum class ModVerdict { Holds, Fails, Inconclusive };

std::string to_string(ModVerdict v);

/// Output record of the direct modulus estimators. `trace` holds one
/// (radius, infimum) row per shrinking neighborhood; `witness` is the point
/// achieving the infimum at the finest clean radius.
struct RegularityReport {
  double modulus = 0.0;
  double q = 1.0;
  double neighborhood_radius = 0.0;
  Vec witness;
  std::vector<std::pair<double, double>> trace;
  ModVerdict verdict = ModVerdict::Fails;
  Verdict value_class = Verdict::Zero;
  bool converged = false;
  std::optional<bool> isolated_point;  // isolated_calmness only
};

/// Direct estimator of the q-order strong subregularity modulus of F at
/// (xbar, ybar): inf over sampled x != xbar in shrinking annuli of
/// d(ybar, F(x)) / ||x - xbar||^q. The neighborhood V of ybar is the whole
/// space.
RegularityReport strong_subregularity_modulus(const SetValuedMap& F, const Vec& xbar,
                                              const Vec& ybar, HolderOrder q,
                                              const ScaleLadder& radii, const DirectionGrid& grid,
                                              int parallel = 1);

/// Direct estimator of the q-order isolated calmness modulus of S at
/// (ybar, xbar): inf over sampled graph points (y, x), x != xbar, of
/// ||y - ybar|| / ||x - xbar||^q over shrinking balls. Also reports whether
/// xbar is an isolated point of S(ybar).
RegularityReport isolated_calmness_modulus(const SetValuedMap& S, const Vec& ybar,
                                           const Vec& xbar, HolderOrder q,
                                           const ScaleLadder& radii, const DirectionGrid& grid,
                                           int parallel = 1);

/// Direct estimator of the q-order sharp minimizer modulus: inf over sampled
/// x != xbar of (f(x) - f(xbar)) / ||x - xbar||^q. A genuinely negative
/// difference fails the verdict immediately with modulus 0.
RegularityReport sharp_minimum_modulus(const ScalarFn& f, const Vec& xbar, HolderOrder q,
                                       const ScaleLadder& radii, const DirectionGrid& grid,
                                       int parallel = 1);

struct PositiveDefiniteReport {
  bool positive = false;
  double modulus = 0.0;
  LimitEstimate detail;
};

/// H is q-order positively definite iff ||H||^* > 0; the modulus is ||H||^*.
PositiveDefiniteReport check_positive_definite(const HomogeneousSampler& H,
                                               const DirectionGrid& grid);

/// Convex 1-d function together with its subdifferential interval
/// [left derivative, right derivative].
struct SubdiffOracle {
  ScalarFn f;
  std::function<Interval(double)> subdiff;

  SetValuedMap as_map() const;
};

/// Checks the two-sided modulus bracket between ||D_q df(xbar,0)||^* and the
/// (q+1)-order sharp-minimum modulus:
///   (q^q/(q+1)^(q+1)) * upper <= middle <= upper  (with 5% slack).
struct SandwichReport {
  double lower = 0.0;   // factor * ||D_q df||^*
  double middle = 0.0;  // shrp_{q+1} f
  double upper = 0.0;   // ||D_q df||^*
  bool pass = false;
};

SandwichReport verify_sandwich_t112(const SubdiffOracle& oracle, double xbar, HolderOrder q);

/// Two-route comparison of the subregularity modulus against the lower norm
/// of the graphical derivative; `inconclusive` marks disagreement beyond
/// slack (never treated as a refutation of either estimator).
struct TwoRouteCheck {
  double direct = 0.0;
  double via_derivative = 0.0;
  bool agree = false;
  bool inconclusive = false;
};

TwoRouteCheck verify_srg_equals_derivative_norm(const SetValuedMap& F, const Vec& xbar,
                                                const Vec& ybar, HolderOrder q);

/// Three equivalent calmness conditions evaluated independently: the direct
/// modulus, finiteness of the outer norm of D_{1/q} S, and triviality of
/// D_{1/q} S(ybar, xbar)(0), plus the modulus identity clm = outer^{-q}.
struct CalmnessCriteria {
  bool direct_holds = false;
  double clm_modulus = 0.0;
  bool outer_finite = false;
  double outer_value = 0.0;
  bool derivative_at_zero_trivial = false;
  bool agree = false;
  bool identity_ok = false;
  double identity_rhs = 0.0;
};

CalmnessCriteria verify_calmness_criteria(const SetValuedMap& S, const Vec& ybar, const Vec& xbar,
                                          HolderOrder q);

/// Stability of strong subregularity under single-valued perturbations:
///   srg_q(F+g) >= srg_q(F) - ||D_q g(xbar)||^+   (with 5% slack).
struct PerturbationCheck {
  double lhs = 0.0;
  double srg_f = 0.0;
  double outer_dg = 0.0;
  bool pass = false;
};

PerturbationCheck perturbation_bound_check(const SetValuedMap& F, const VectorFn& g,
                                           const Vec& xbar, const Vec& ybar, HolderOrder q);

/// Equivalence of q-order subregularity of the subdifferential and
/// (q+1)-order sharpness of the minimum, with the modulus factor
/// q^q/(q+1)^{q+1} (10% slack).
struct SubdiffSharpReport {
  double srg = 0.0;
  double shrp = 0.0;
  double factor = 0.0;
  bool pass = false;
};

SubdiffSharpReport subdiff_subregularity_vs_sharp(const SubdiffOracle& oracle, double xbar,
                                                  HolderOrder q);

}  // namespace holderreg
