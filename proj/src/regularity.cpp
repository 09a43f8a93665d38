#include "holderreg/regularity.hpp"

#include <algorithm>
#include <cmath>

namespace holderreg {

std::string to_string(ModVerdict v) {
  switch (v) {
    case ModVerdict::Holds: return "holds";
    case ModVerdict::Fails: return "fails";
    case ModVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

constexpr double kZeroMatchTol = 1e-2;
constexpr double kFnDiffAtol = 1e-8;  // absolute floor for "genuinely negative"

bool le_with_slack(double a, double b, double rel) {
  if (a == kInf) return b == kInf;
  if (b == kInf) return true;
  return a <= b + rel * std::max({std::abs(a), std::abs(b), 1e-3});
}

bool values_agree(double a, double b, double rel) {
  if (a == kInf || b == kInf) return a == b;
  if (std::abs(a) <= kZeroMatchTol || std::abs(b) <= kZeroMatchTol)
    return std::abs(a) <= kZeroMatchTol && std::abs(b) <= kZeroMatchTol;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

int annulus_count(const DirectionGrid& grid) { return 64 * static_cast<int>(grid.size()); }

// Shared annuli scan: quotient(x) over low-discrepancy annulus samples.
// `hard_fail` is set when the quotient callback reports a genuine violation.
struct AnnuliScan {
  std::vector<std::pair<double, double>> trace;
  std::vector<Vec> argmins;
  bool hard_fail = false;
};

AnnuliScan scan_annuli(const std::function<double(const Vec&)>& quotient,
                       const std::function<bool(const Vec&)>& violates, const Vec& center,
                       const ScaleLadder& radii, int count, int parallel) {
  AnnuliScan scan;
  std::vector<double> infima(radii.rungs, kInf);
  std::vector<Vec> argmins(radii.rungs, center);
  std::vector<char> failed(radii.rungs, 0);
  parallel_for(radii.rungs, parallel, [&](int k) {
    const double r_out = radii.at(k);
    const double r_in = r_out * radii.theta;
    for (const Vec& x : annulus_points(center, r_in, r_out, count)) {
      if (violates && violates(x)) {
        failed[k] = 1;
        return;
      }
      const double v = quotient(x);
      if (v < infima[k]) {
        infima[k] = v;
        argmins[k] = x;
      }
    }
  });
  for (int k = 0; k < radii.rungs; ++k) {
    scan.trace.emplace_back(radii.at(k), infima[k]);
    scan.argmins.push_back(argmins[k]);
    scan.hard_fail = scan.hard_fail || failed[k];
  }
  return scan;
}

RegularityReport report_from_scan(const AnnuliScan& scan, double q, double theta) {
  RegularityReport rep;
  rep.q = q;
  rep.trace = scan.trace;
  if (scan.hard_fail) {
    rep.modulus = 0.0;
    rep.verdict = ModVerdict::Fails;
    rep.value_class = Verdict::Zero;
    rep.converged = true;
    return rep;
  }
  const LimitEstimate est = analyze_limit(scan.trace, theta);
  rep.converged = est.converged;
  rep.value_class = est.verdict;
  rep.modulus = est.value == -kInf ? 0.0 : std::max(0.0, est.value);
  const int cut = std::clamp(est.cut_index, 0, static_cast<int>(scan.trace.size()) - 1);
  rep.neighborhood_radius = scan.trace[cut].first;
  rep.witness = scan.argmins[cut];
  if (est.value == kInf) {
    rep.modulus = kInf;
    rep.verdict = ModVerdict::Holds;
  } else if (rep.modulus >= kEpsPos && est.converged) {
    rep.verdict = ModVerdict::Holds;
  } else if (rep.modulus < kEpsPos) {
    rep.verdict = ModVerdict::Fails;
  } else {
    rep.verdict = ModVerdict::Inconclusive;
  }
  return rep;
}

ScaleLadder default_radii() { return make_radii_ladder(); }
ScaleLadder default_ladder() { return make_scale_ladder(); }

}  // namespace

RegularityReport strong_subregularity_modulus(const SetValuedMap& F, const Vec& xbar,
                                              const Vec& ybar, HolderOrder q,
                                              const ScaleLadder& radii, const DirectionGrid& grid,
                                              int parallel) {
  if (graph_residual(F, xbar, ybar) > kMembershipTol * (1.0 + norm2(ybar)))
    throw PreconditionError("strong_subregularity_modulus: base point is not on gph F");
  auto quotient = [&](const Vec& x) {
    const double dist = dist2(x, xbar);
    if (dist <= 0.0) return kInf;
    return F.image(x).distance(ybar) / std::pow(dist, q.value());
  };
  const AnnuliScan scan =
      scan_annuli(quotient, nullptr, xbar, radii, annulus_count(grid), parallel);
  return report_from_scan(scan, q.value(), radii.theta);
}

RegularityReport isolated_calmness_modulus(const SetValuedMap& S, const Vec& ybar,
                                           const Vec& xbar, HolderOrder q,
                                           const ScaleLadder& radii, const DirectionGrid& grid,
                                           int parallel) {
  (void)grid;
  if (graph_residual(S, ybar, xbar) > kMembershipTol * (1.0 + norm2(xbar)))
    throw PreconditionError("isolated_calmness_modulus: base point is not on gph S");
  const Vec base = concat(ybar, xbar);
  const int ny = static_cast<int>(ybar.size());
  const int nx = static_cast<int>(xbar.size());

  std::vector<double> infima(radii.rungs, kInf);
  std::vector<Vec> argmins(radii.rungs, xbar);
  parallel_for(radii.rungs, 1, [&](int k) {
    const double r = radii.at(k);
    for (const Vec& p : S.graph_sample(base, r, kDefaultSamplerResolution)) {
      const Vec y(p.begin(), p.begin() + ny);
      const Vec x(p.begin() + ny, p.end());
      const double dx = dist2(x, xbar);
      if (dx <= 1e-12 * (1.0 + r)) continue;  // the base point itself
      const double v = dist2(y, ybar) / std::pow(dx, q.value());
      if (v < infima[k]) {
        infima[k] = v;
        argmins[k] = x;
      }
    }
  });

  AnnuliScan scan;
  for (int k = 0; k < radii.rungs; ++k) {
    scan.trace.emplace_back(radii.at(k), infima[k]);
    scan.argmins.push_back(argmins[k]);
  }
  RegularityReport rep = report_from_scan(scan, q.value(), radii.theta);

  // isolated point check on S(ybar) within the final neighborhood
  const double r_fin = rep.neighborhood_radius > 0 ? rep.neighborhood_radius : radii.finest();
  const SetRepr im = S.image(ybar);
  bool isolated = true;
  if (im.kind() == SetRepr::Kind::Intervals) {
    for (const Interval& iv : im.parts()) {
      if (interval_distance(xbar[0], iv) <= 1e-12) {
        if (iv.hi - iv.lo > 1e-12) isolated = false;
      } else if (interval_distance(xbar[0], iv) <= r_fin) {
        isolated = false;
      }
    }
  } else if (im.kind() == SetRepr::Kind::Cloud) {
    for (const Vec& p : im.points()) {
      const double d = dist2(p, xbar);
      if (d > 1e-9 && d <= r_fin) isolated = false;
    }
  }
  rep.isolated_point = isolated;
  return rep;
}

RegularityReport sharp_minimum_modulus(const ScalarFn& f, const Vec& xbar, HolderOrder q,
                                       const ScaleLadder& radii, const DirectionGrid& grid,
                                       int parallel) {
  const double f0 = f.eval(xbar);
  if (!std::isfinite(f0))
    throw PreconditionError("sharp_minimum_modulus: f(xbar) must be finite");
  const double atol = kFnDiffAtol * (1.0 + std::abs(f0));
  auto quotient = [&](const Vec& x) {
    const double dist = dist2(x, xbar);
    if (dist <= 0.0) return kInf;
    const double diff = f.eval(x) - f0;
    if (diff == kInf) return kInf;
    return std::max(diff, 0.0) / std::pow(dist, q.value());
  };
  auto violates = [&](const Vec& x) {
    const double v = f.eval(x);
    return v != kInf && v - f0 < -atol;  // xbar is then not a local minimizer
  };
  const AnnuliScan scan =
      scan_annuli(quotient, violates, xbar, radii, annulus_count(grid), parallel);
  return report_from_scan(scan, q.value(), radii.theta);
}

PositiveDefiniteReport check_positive_definite(const HomogeneousSampler& H,
                                               const DirectionGrid& grid) {
  PositiveDefiniteReport rep;
  rep.detail = norm_star(H, grid);
  rep.modulus = rep.detail.value;
  rep.positive = rep.modulus >= kEpsPos;
  return rep;
}

SetValuedMap SubdiffOracle::as_map() const {
  auto sd = subdiff;
  return make_map(1, 1, [sd](const Vec& x) -> SetRepr {
    const Interval iv = sd(x[0]);
    if (!iv.valid()) return SetRepr::empty(1);
    return SetRepr::intervals({iv});
  });
}

SandwichReport verify_sandwich_t112(const SubdiffOracle& oracle, double xbar, HolderOrder q) {
  const Interval at_base = oracle.subdiff(xbar);
  if (!(at_base.lo <= kMembershipTol && at_base.hi >= -kMembershipTol))
    throw PreconditionError("verify_sandwich_t112: 0 is not in the subdifferential at xbar");

  const DirectionGrid grid = make_direction_grid(1, 2);
  const HomogeneousSampler H =
      derivative_sampler(oracle.as_map(), {xbar}, {0.0}, q, default_ladder());
  SandwichReport rep;
  rep.upper = norm_star(H, grid).value;
  const double factor = std::pow(q.value(), q.value()) / std::pow(q.value() + 1.0, q.value() + 1.0);
  rep.lower = rep.upper == kInf ? kInf : factor * rep.upper;
  rep.middle = sharp_minimum_modulus(oracle.f, {xbar}, HolderOrder(q.value() + 1.0),
                                     default_radii(), grid)
                   .modulus;
  rep.pass = le_with_slack(rep.lower, rep.middle, 0.05) && le_with_slack(rep.middle, rep.upper, 0.05);
  return rep;
}

TwoRouteCheck verify_srg_equals_derivative_norm(const SetValuedMap& F, const Vec& xbar,
                                                const Vec& ybar, HolderOrder q) {
  TwoRouteCheck chk;
  const DirectionGrid grid = make_direction_grid(F.n, default_direction_count(F.n));
  chk.direct =
      strong_subregularity_modulus(F, xbar, ybar, q, default_radii(), grid).modulus;
  chk.via_derivative =
      norm_lower(derivative_sampler(F, xbar, ybar, q, default_ladder()), grid).value;
  chk.agree = values_agree(chk.direct, chk.via_derivative, 0.05);
  chk.inconclusive = !chk.agree;
  return chk;
}

CalmnessCriteria verify_calmness_criteria(const SetValuedMap& S, const Vec& ybar, const Vec& xbar,
                                          HolderOrder q) {
  CalmnessCriteria out;
  const DirectionGrid xgrid = make_direction_grid(S.m, default_direction_count(S.m));
  const DirectionGrid ygrid = make_direction_grid(S.n, default_direction_count(S.n));

  const RegularityReport clm =
      isolated_calmness_modulus(S, ybar, xbar, q, default_radii(), xgrid);
  out.clm_modulus = clm.modulus;
  out.direct_holds = clm.verdict == ModVerdict::Holds;

  const HolderOrder inv_q = q.inverse();
  const ScaleLadder lad = default_ladder();
  const HomogeneousSampler D = derivative_sampler(S, ybar, xbar, inv_q, lad);
  out.outer_value = norm_outer(D, ygrid).value;
  out.outer_finite = out.outer_value < kEpsInf;

  const SetRepr at0 = graphical_derivative_image(S, ybar, xbar, Vec(S.n, 0.0), inv_q, lad);
  const double tol0 = std::max(1e-3, 4.0 * default_cluster_tol(inv_q, lad));
  out.derivative_at_zero_trivial = at0.sup_norm() <= tol0;

  out.agree = (out.direct_holds == out.outer_finite) &&
              (out.outer_finite == out.derivative_at_zero_trivial);

  if (out.outer_value == kInf || out.outer_value <= 0.0) {
    out.identity_rhs = out.outer_value == kInf ? 0.0 : kInf;
    out.identity_ok = values_agree(out.clm_modulus, out.identity_rhs, 0.10);
  } else {
    out.identity_rhs = std::pow(out.outer_value, -q.value());
    out.identity_ok = values_agree(out.clm_modulus, out.identity_rhs, 0.10);
  }
  return out;
}

PerturbationCheck perturbation_bound_check(const SetValuedMap& F, const VectorFn& g,
                                           const Vec& xbar, const Vec& ybar, HolderOrder q) {
  const DirectionGrid grid = make_direction_grid(F.n, default_direction_count(F.n));
  const ScaleLadder lad = default_ladder();
  for (const Vec& u : grid.points) {
    if (!hadamard_derivative_vec(g, xbar, u, q, lad).single_valued)
      throw PreconditionError(
          "perturbation_bound_check: g is not q-order Hadamard directionally differentiable");
  }

  PerturbationCheck chk;
  const Vec gx = g.eval(xbar);
  chk.srg_f = strong_subregularity_modulus(F, xbar, ybar, q, default_radii(), grid).modulus;
  chk.lhs = strong_subregularity_modulus(translate_map(F, g), xbar, ybar + gx, q,
                                         default_radii(), grid)
                .modulus;
  chk.outer_dg =
      norm_outer(derivative_sampler(function_as_map(g), xbar, gx, q, lad), grid).value;

  if (chk.outer_dg == kInf || chk.srg_f == 0.0) {
    chk.pass = true;  // the bound is vacuous
  } else if (chk.srg_f == kInf) {
    chk.pass = chk.lhs == kInf;
  } else {
    chk.pass = le_with_slack(chk.srg_f - chk.outer_dg, chk.lhs, 0.05);
  }
  return chk;
}

SubdiffSharpReport subdiff_subregularity_vs_sharp(const SubdiffOracle& oracle, double xbar,
                                                  HolderOrder q) {
  const Interval at_base = oracle.subdiff(xbar);
  if (!(at_base.lo <= kMembershipTol && at_base.hi >= -kMembershipTol))
    throw PreconditionError(
        "subdiff_subregularity_vs_sharp: 0 is not in the subdifferential at xbar");
  // convexity: the subdifferential intervals must be monotone along the line
  double prev_hi = -kInf;
  for (int i = -12; i <= 12; ++i) {
    const double x = xbar + 0.05 * i;
    const Interval iv = oracle.subdiff(x);
    if (!iv.valid() || iv.lo < prev_hi - 1e-7)
      throw PreconditionError("subdiff_subregularity_vs_sharp: subdifferential is not monotone");
    prev_hi = iv.hi;
  }

  const DirectionGrid grid = make_direction_grid(1, 2);
  SubdiffSharpReport rep;
  rep.factor = std::pow(q.value(), q.value()) / std::pow(q.value() + 1.0, q.value() + 1.0);
  rep.srg = strong_subregularity_modulus(oracle.as_map(), {xbar}, {0.0}, q, default_radii(), grid)
                .modulus;
  rep.shrp = sharp_minimum_modulus(oracle.f, {xbar}, HolderOrder(q.value() + 1.0),
                                   default_radii(), grid)
                 .modulus;
  const double scaled = rep.srg == kInf ? kInf : rep.factor * rep.srg;
  rep.pass = le_with_slack(scaled, rep.shrp, 0.10) && le_with_slack(rep.shrp, rep.srg, 0.10);
  return rep;
}

}  // namespace holderreg
