#include "holderreg/penalty.hpp"

#include <algorithm>
#include <cmath>

namespace holderreg::penalty {

namespace {

ScalarFn positive_part_fn(const ScalarFn& g) {
  ScalarFn gp;
  gp.n = g.n;
  gp.eval = [g](const Vec& x) {
    const double v = g.eval(x);
    return v == kInf ? kInf : std::max(0.0, v);
  };
  return gp;
}

}  // namespace

ScalarFn penalty_fn(const PenaltyProblem& prob) {
  ScalarFn lp;
  lp.n = prob.f.n;
  const ScalarFn f = prob.f;
  const std::vector<ScalarFn> g = prob.g;
  const double p = prob.p, r = prob.r;
  lp.eval = [f, g, p, r](const Vec& x) {
    double v = f.eval(x);
    if (v == kInf) return kInf;
    for (const ScalarFn& gi : g) {
      const double gv = gi.eval(x);
      if (gv == kInf) return kInf;
      v += r * std::pow(std::max(0.0, gv), p);
    }
    return v;
  };
  return lp;
}

std::vector<int> active_inequalities(const PenaltyProblem& prob, double tol) {
  std::vector<int> act;
  for (std::size_t i = 0; i < prob.g.size(); ++i) {
    const double v = prob.g[i].eval(prob.xbar);
    if (v != kInf && std::abs(v) <= tol) act.push_back(static_cast<int>(i));
  }
  return act;
}

std::vector<Vec> kstar_sample(const PenaltyProblem& prob, HolderOrder q,
                              const DirectionGrid& grid, const ScaleLadder& ladder) {
  std::vector<Vec> ks;
  for (const Vec& u : grid.points) {
    const LimitEstimate est = hadamard_subderivative(prob.f, prob.xbar, u, q, ladder);
    if (est.value <= kEpsPos) ks.push_back(u);
  }
  return ks;
}

PenaltyReport penalty_threshold(const PenaltyProblem& prob, HolderOrder q) {
  const DirectionGrid grid = make_direction_grid(prob.f.n, default_direction_count(prob.f.n));
  const ScaleLadder ladder = make_scale_ladder();

  PenaltyReport rep;
  rep.active = active_inequalities(prob);

  std::vector<double> fq(grid.size());
  int finite_count = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const LimitEstimate est = hadamard_subderivative(prob.f, prob.xbar, grid.points[i], q, ladder);
    if (est.value == -kInf)
      throw PreconditionError("penalty_threshold: f'_q is not proper (reaches -inf)");
    fq[i] = est.value;
    if (std::isfinite(est.value)) ++finite_count;
  }
  if (finite_count == 0)
    throw PreconditionError("penalty_threshold: f'_q is not proper (nowhere finite)");

  rep.b = kInf;
  for (double v : fq) rep.b = std::min(rep.b, v);

  const double qp = q.value() / prob.p;
  rep.sufficient = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double sum = 0.0;
    bool all_zero = true;
    for (int gi : rep.active) {
      const LimitEstimate ge = hadamard_subderivative(positive_part_fn(prob.g[gi]), prob.xbar,
                                                      grid.points[i], HolderOrder(qp), ladder);
      const double gval = positive_part(ge.value == -kInf ? 0.0 : ge.value);
      if (gval > kEpsPos) all_zero = false;
      sum = sum == kInf || gval == kInf ? kInf : sum + std::pow(gval, prob.p);
    }
    if (fq[i] <= kEpsPos) {
      rep.kstar.push_back(grid.points[i]);
      rep.a = std::min(rep.a, sum);
    }
    if (all_zero && fq[i] <= kEpsPos) rep.sufficient = false;
  }
  rep.kstar_nonempty = !rep.kstar.empty();

  if (!rep.kstar_nonempty) {
    rep.rho0 = 0.0;
  } else if (!rep.sufficient || rep.a <= std::pow(kEpsPos, prob.p)) {
    rep.sufficient = false;
    rep.rho0 = kInf;  // no finite weight is certified
  } else {
    rep.rho0 = std::max(0.0, -rep.b) / rep.a;
  }
  return rep;
}

PenaltyCheck sharp_penalty_check(const PenaltyProblem& prob, HolderOrder q) {
  PenaltyCheck chk;
  chk.threshold = penalty_threshold(prob, q);
  const ScalarFn lp = penalty_fn(prob);
  const DirectionGrid grid = make_direction_grid(lp.n, default_direction_count(lp.n));
  chk.sharp = sharp_minimum_modulus(lp, prob.xbar, q, make_radii_ladder(), grid);
  chk.subderiv_norm = subderivative_norm(lp, prob.xbar, q, grid, make_scale_ladder());

  if (chk.threshold.rho0 < kInf && prob.r > chk.threshold.rho0) {
    const bool sharp_pos = chk.sharp.value_class == Verdict::Positive ||
                           chk.sharp.value_class == Verdict::Infinite;
    const bool norm_pos = chk.subderiv_norm.verdict == Verdict::Positive ||
                          chk.subderiv_norm.verdict == Verdict::Infinite;
    chk.consistent = sharp_pos && norm_pos;
  } else {
    chk.consistent = true;  // the threshold makes no claim at this weight
  }
  return chk;
}

}  // namespace holderreg::penalty
