#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holderreg/penalty.hpp"

using namespace holderreg;
using namespace holderreg::penalty;

namespace {

ScalarFn linear_fn() {
  ScalarFn f;
  f.n = 1;
  f.eval = [](const Vec& x) { return x[0]; };
  return f;
}

ScalarFn abs_fn() {
  ScalarFn f;
  f.n = 1;
  f.eval = [](const Vec& x) { return std::abs(x[0]); };
  return f;
}

ScalarFn neg_abs_fn() {
  ScalarFn f;
  f.n = 1;
  f.eval = [](const Vec& x) { return -std::abs(x[0]); };
  return f;
}

ScalarFn abs_power_fn(double alpha) {
  ScalarFn f;
  f.n = 1;
  f.eval = [alpha](const Vec& x) { return std::pow(std::abs(x[0]), alpha); };
  return f;
}

// x^alpha on x >= 0, +inf elsewhere
ScalarFn domain_power_fn(double alpha) {
  ScalarFn f;
  f.n = 1;
  f.eval = [alpha](const Vec& x) { return x[0] < 0.0 ? kInf : std::pow(x[0], alpha); };
  return f;
}

ScalarFn domain_linear_fn() { return domain_power_fn(1.0); }

// min x s.t. |x|^{2s} <= 0 with weight r (the two-sided convention)
PenaltyProblem two_sided(double s, double p, double r) {
  PenaltyProblem prob;
  prob.f = linear_fn();
  prob.g = {abs_power_fn(2.0 * s)};
  prob.p = p;
  prob.r = r;
  prob.xbar = {0.0};
  return prob;
}

// the same fixture under the one-sided-domain convention
PenaltyProblem domain_restricted(double s, double p, double r) {
  PenaltyProblem prob;
  prob.f = domain_linear_fn();
  prob.g = {domain_power_fn(2.0 * s)};
  prob.p = p;
  prob.r = r;
  prob.xbar = {0.0};
  return prob;
}

const DirectionGrid kGrid1 = make_direction_grid(1, 2);

}  // namespace

TEST_CASE("penalty function assembly") {
  const PenaltyProblem prob = two_sided(0.5, 1.0, 2.0);
  const ScalarFn lp = penalty_fn(prob);
  // f = x, g = |x|, r = 2: the penalty is x + 2|x|
  for (double x : {0.3, -0.4, 0.0})
    CHECK(lp.eval({x}) == doctest::Approx(x + 2.0 * std::abs(x)));

  PenaltyProblem inactive = prob;
  inactive.g = {[] {
    ScalarFn g;
    g.n = 1;
    g.eval = [](const Vec& x) { return -1.0 - x[0] * x[0]; };
    return g;
  }()};
  const ScalarFn lp2 = penalty_fn(inactive);
  for (double x : {0.3, -0.4}) CHECK(lp2.eval({x}) == doctest::Approx(x));

  const PenaltyProblem dom = domain_restricted(0.5, 1.0, 2.0);
  CHECK(penalty_fn(dom).eval({-0.5}) == kInf);
}

TEST_CASE("active inequality detection") {
  const PenaltyProblem prob = two_sided(0.5, 1.0, 2.0);
  CHECK(active_inequalities(prob) == std::vector<int>{0});

  PenaltyProblem inactive = prob;
  inactive.g[0].eval = [](const Vec& x) { return -0.5 + 0.1 * x[0]; };
  CHECK(active_inequalities(inactive).empty());

  PenaltyProblem mixed = prob;
  mixed.g = {prob.g[0], inactive.g[0]};
  CHECK(active_inequalities(mixed) == std::vector<int>{0});
}

TEST_CASE("descent-direction sampling") {
  const ScaleLadder lad = make_scale_ladder();
  PenaltyProblem prob = two_sided(0.5, 1.0, 2.0);

  prob.f = linear_fn();
  auto ks = kstar_sample(prob, HolderOrder(1), kGrid1, lad);
  REQUIRE(ks.size() == 1);
  CHECK(ks[0][0] == -1.0);

  prob.f = abs_fn();
  CHECK(kstar_sample(prob, HolderOrder(1), kGrid1, lad).empty());

  prob.f = neg_abs_fn();
  CHECK(kstar_sample(prob, HolderOrder(1), kGrid1, lad).size() == 2);
}

TEST_CASE("penalty threshold under the two conventions") {
  // two-sided, sp = 1/2: K* = {-1}, (g+)'_1(0;-1) = 1, b = -1, rho0 = 1
  const auto two = penalty_threshold(two_sided(0.5, 1.0, 3.0), HolderOrder(1));
  CHECK(two.active == std::vector<int>{0});
  CHECK(two.kstar_nonempty);
  CHECK(two.b == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(two.a == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(two.rho0 == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(two.sufficient);

  // domain-restricted: descending directions leave the domain, K* is empty
  const auto dom = penalty_threshold(domain_restricted(0.5, 1.0, 3.0), HolderOrder(1));
  CHECK(dom.active == std::vector<int>{0});
  CHECK_FALSE(dom.kstar_nonempty);
  CHECK(dom.rho0 == 0.0);

  // every direction ascends: the threshold vanishes
  PenaltyProblem steep = two_sided(0.5, 1.0, 3.0);
  steep.f = abs_fn();
  const auto asc = penalty_threshold(steep, HolderOrder(1));
  CHECK_FALSE(asc.kstar_nonempty);
  CHECK(asc.rho0 == 0.0);
}

TEST_CASE("sharp penalty check across the exponent regimes") {
  // sp < 1/2: the first-order sharp modulus diverges
  const auto low = sharp_penalty_check(two_sided(0.25, 1.0, 3.0), HolderOrder(1));
  CHECK(low.sharp.value_class == Verdict::Infinite);
  CHECK(low.consistent);

  // sp > 1/2: descent along -1 wins, no sharpness
  const auto high = sharp_penalty_check(two_sided(0.75, 1.0, 3.0), HolderOrder(1));
  CHECK(high.sharp.modulus <= 1e-3);
  CHECK(high.sharp.verdict == ModVerdict::Fails);

  // sp = 1/2 two-sided with r = 3: oracle min over signs of (x + 3|x|)/|x|
  double oracle = kInf;
  for (double x : {0.2, -0.2, 0.01, -0.01})
    oracle = std::min(oracle, (x + 3.0 * std::abs(x)) / std::abs(x));
  REQUIRE(oracle == doctest::Approx(2.0));
  const auto mid = sharp_penalty_check(two_sided(0.5, 1.0, 3.0), HolderOrder(1));
  CHECK(mid.sharp.modulus == doctest::Approx(2.0).epsilon(2e-2));
  CHECK(mid.consistent);

  // sp = 1/2 domain-restricted with r = 3: quotient (x + 3x)/x = 4 on x > 0
  const auto midd = sharp_penalty_check(domain_restricted(0.5, 1.0, 3.0), HolderOrder(1));
  CHECK(midd.sharp.modulus == doctest::Approx(4.0).epsilon(2e-2));
  CHECK(midd.consistent);
}

TEST_CASE("superadditivity of the penalty subderivative") {
  const ScaleLadder lad = make_scale_ladder();
  for (double s : {0.25, 0.5, 0.75}) {
    const PenaltyProblem prob = two_sided(s, 1.0, 3.0);
    const ScalarFn lp = penalty_fn(prob);
    for (const Vec& u : kGrid1.points) {
      const double lhs = hadamard_subderivative(lp, prob.xbar, u, HolderOrder(1), lad).value;
      const double f_part =
          hadamard_subderivative(prob.f, prob.xbar, u, HolderOrder(1), lad).value;
      ScalarFn gplus;
      gplus.n = 1;
      const ScalarFn g0 = prob.g[0];
      gplus.eval = [g0](const Vec& x) { return std::max(0.0, g0.eval(x)); };
      const double g_part =
          hadamard_subderivative(gplus, prob.xbar, u, HolderOrder(1), lad).value;
      const double rhs =
          f_part + 3.0 * std::pow(positive_part(g_part), 1.0);
      if (lhs == kInf || rhs == kInf) continue;
      CHECK(lhs >= rhs - 0.02 * std::max({std::abs(lhs), std::abs(rhs), 1.0}));
    }
  }
}

TEST_CASE("power identity for positive-part subderivatives") {
  const ScaleLadder lad = make_scale_ladder();
  // [(g+)'_{q/p}]^p equals ([g+]^p)'_q for g = |x|^{2s}
  for (double p : {1.0, 2.0}) {
    for (double s : {0.5, 0.75}) {
      const double q = 1.0;
      ScalarFn g = abs_power_fn(2.0 * s);
      ScalarFn gp;
      gp.n = 1;
      gp.eval = [g, p](const Vec& x) { return std::pow(std::max(0.0, g.eval(x)), p); };
      for (const Vec& u : kGrid1.points) {
        const double base =
            hadamard_subderivative(g, {0.0}, u, HolderOrder(q / p), lad).value;
        const double lhs = std::pow(positive_part(base), p);
        const double rhs = hadamard_subderivative(gp, {0.0}, u, HolderOrder(q), lad).value;
        if (lhs == kInf || rhs == kInf) {
          CHECK(lhs == rhs);
        } else {
          CHECK(lhs == doctest::Approx(rhs).epsilon(0.02));
        }
      }
    }
  }
}

TEST_CASE("positive-part subderivative is the clipped subderivative") {
  const ScaleLadder lad = make_scale_ladder();
  // g differentiable at the base: (g+)'_q = max{0, g'_q}
  ScalarFn g = linear_fn();
  ScalarFn gplus;
  gplus.n = 1;
  gplus.eval = [](const Vec& x) { return std::max(0.0, x[0]); };
  for (const Vec& u : kGrid1.points) {
    const double raw = hadamard_subderivative(g, {0.0}, u, HolderOrder(1), lad).value;
    const double plus = hadamard_subderivative(gplus, {0.0}, u, HolderOrder(1), lad).value;
    CHECK(plus == doctest::Approx(positive_part(raw)).epsilon(1e-6));
  }
}

TEST_CASE("threshold soundness above rho0") {
  for (double s : {0.5}) {
    PenaltyProblem prob = two_sided(s, 1.0, 1.0);
    const auto thr = penalty_threshold(prob, HolderOrder(1));
    REQUIRE(thr.rho0 < kInf);
    prob.r = 2.0 * thr.rho0 + 1.0;
    const auto chk = sharp_penalty_check(prob, HolderOrder(1));
    CHECK((chk.sharp.value_class == Verdict::Positive ||
           chk.sharp.value_class == Verdict::Infinite));
    CHECK(chk.consistent);
  }
}
