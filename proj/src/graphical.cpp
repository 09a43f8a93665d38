#include "holderreg/graphical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace holderreg {

namespace {

// Offset grids for collecting derivative samples around a direction.
int offsets_per_axis(int n) {
  switch (n) {
    case 1: return 9;
    case 2: return 5;
    default: return 3;
  }
}

std::vector<Vec> offset_grid(int n, double radius) {
  const int per_axis = offsets_per_axis(n);
  std::vector<Vec> out;
  std::vector<int> idx(n, 0);
  Vec off(n);
  const int total = static_cast<int>(std::llround(std::pow(per_axis, n)));
  out.reserve(total);
  for (int flat = 0; flat < total; ++flat) {
    int rem = flat;
    for (int d = 0; d < n; ++d) {
      idx[d] = rem % per_axis;
      rem /= per_axis;
      off[d] = radius * (2.0 * idx[d] / (per_axis - 1) - 1.0);
    }
    out.push_back(off);
  }
  return out;
}

SetRepr translated(const SetRepr& s, const Vec& by) {
  Vec neg = by;
  for (double& v : neg) v = -v;
  return s.rescaled(neg, 1.0);
}

// Union of rescaled images collected at one rung.
struct RungSet {
  bool cloud = false;
  std::vector<Interval> parts;   // interval path, un-normalized
  std::vector<Vec> points;       // cloud path

  bool empty() const { return parts.empty() && points.empty(); }
};

RungSet collect_rung(const SetValuedMap& F, const Vec& xbar, const Vec& ybar, const Vec& u,
                     double t, double q, double window) {
  RungSet rs;
  const double tq = std::pow(t, q);
  for (const Vec& off : offset_grid(F.n, t)) {
    const Vec x = xbar + t * (u + off);
    const SetRepr img = F.image(x);
    if (img.is_empty()) continue;
    const SetRepr scaled = img.rescaled(ybar, tq);
    if (scaled.kind() == SetRepr::Kind::Intervals) {
      for (const Interval& iv : scaled.parts()) rs.parts.push_back(iv);
    } else {
      rs.cloud = true;
      for (const Vec& p : scaled.points())
        if (norm2(p) <= window) rs.points.push_back(p);
    }
  }
  return rs;
}

// Window for inverse-derivative scans: kept moderate so the output grid
// resolves the finite structure; escapes past it are restored to infinity by
// the persistence step.
constexpr double kInverseScanWindow = 50.0;
constexpr int kInverseScanGrid = 1601;

// Rung collection for inverse maps (output dimension 1): the preimage of each
// input point is recovered by scanning forward-membership residuals along the
// output axis. A grid point belongs to the preimage when its residual dips
// below the local residual variation (a scale-free zero-crossing test); run
// boundaries are then sharpened by bisection (solid preimages) or a
// golden-section residual minimization (thin ones).
RungSet collect_rung_inverse(const SetValuedMap& S, const Vec& in_base, double out_base,
                             const Vec& u, double t, double q) {
  const SetValuedMap& fwd = *S.inverse_of;
  RungSet rs;
  const double tq = std::pow(t, q);
  const double r = kInverseScanWindow * tq;
  auto resid_at = [&](double out, const Vec& in) { return fwd.image(Vec{out}).distance(in); };

  for (const Vec& off : offset_grid(S.n, t)) {
    const Vec in = in_base + t * (u + off);
    const double atol = kMembershipTol * (1.0 + norm2(in));
    // interval-type forward images have exactly-zero residuals inside the
    // preimage; strictness can therefore use machine precision
    const double strict_tol = 16.0 * std::numeric_limits<double>::epsilon() * (1.0 + norm2(in));
    std::vector<double> resid(kInverseScanGrid);
    std::vector<double> outs(kInverseScanGrid);
    for (int j = 0; j < kInverseScanGrid; ++j) {
      outs[j] = out_base + r * (2.0 * j / (kInverseScanGrid - 1) - 1.0);
      resid[j] = resid_at(outs[j], in);
    }
    auto member = [&](int j) {
      double var = atol;
      if (j > 0) var += std::abs(resid[j] - resid[j - 1]);
      if (j + 1 < kInverseScanGrid) var += std::abs(resid[j + 1] - resid[j]);
      return resid[j] <= 1.5 * var;
    };
    auto bisect_edge = [&](double inside, double outside) {
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (inside + outside);
        if (resid_at(mid, in) <= strict_tol)
          inside = mid;
        else
          outside = mid;
      }
      return inside;
    };

    for (int j = 0; j < kInverseScanGrid;) {
      if (!member(j)) {
        ++j;
        continue;
      }
      int j1 = j;
      while (j1 + 1 < kInverseScanGrid && member(j1 + 1)) ++j1;

      int strict_lo = -1, strict_hi = -1;
      for (int s = j; s <= j1; ++s)
        if (resid[s] <= strict_tol) {
          if (strict_lo < 0) strict_lo = s;
          strict_hi = s;
        }
      double lo, hi;
      if (strict_lo >= 0) {
        lo = (j == 0) ? outs[0] : bisect_edge(outs[strict_lo], outs[j - 1]);
        hi = (j1 == kInverseScanGrid - 1) ? outs[j1] : bisect_edge(outs[strict_hi], outs[j1 + 1]);
      } else {
        // thin preimage: locate the residual minimum inside the run
        double a = outs[std::max(0, j - 1)];
        double b = outs[std::min(kInverseScanGrid - 1, j1 + 1)];
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = resid_at(x1, in), f2 = resid_at(x2, in);
        for (int it = 0; it < 60; ++it) {
          if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = resid_at(x1, in);
          } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = resid_at(x2, in);
          }
        }
        lo = hi = 0.5 * (a + b);
      }
      rs.parts.push_back({(lo - out_base) / tq, (hi - out_base) / tq});
      j = j1 + 1;
    }
  }
  return rs;
}

SetRepr persistent_intervals(const std::vector<SetRepr>& rungs, double window, double dil,
                             double cluster_tol) {
  // windowed intersection of dilated rung sets; a point of the limit must be
  // approximately present in all of the last rungs and exactly in the finest
  SetRepr acc = rungs.back().clipped(window).dilated(dil);
  for (std::size_t j = 0; j + 1 < rungs.size(); ++j)
    acc = SetRepr::intersect(acc, rungs[j].clipped(window).dilated(dil));
  if (acc.is_empty()) return acc;
  acc = SetRepr::intersect(acc, rungs.back().clipped(window));
  if (acc.is_empty()) return acc;

  // restore escapes to infinity: components pinned at the window edge for all
  // rungs keep growing without bound
  std::vector<Interval> out;
  for (const Interval& iv : acc.parts()) {
    Interval r = iv;
    if (r.hi >= window - 2.0 * dil) r.hi = kInf;
    if (r.lo <= -window + 2.0 * dil) r.lo = -kInf;
    out.push_back(r);
  }
  return SetRepr::intervals(std::move(out)).cluster_merged(cluster_tol);
}

SetRepr persistent_cloud(const std::vector<RungSet>& rungs, int m, double dil,
                         double cluster_tol) {
  const RungSet& finest = rungs.back();
  std::vector<SetRepr> older;
  for (std::size_t j = 0; j + 1 < rungs.size(); ++j)
    older.push_back(SetRepr::cloud(m, rungs[j].points));
  std::vector<Vec> kept;
  for (const Vec& v : finest.points) {
    bool ok = true;
    for (const SetRepr& o : older)
      if (o.distance(v) > dil) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(v);
  }
  return SetRepr::cloud(m, std::move(kept)).cluster_merged(cluster_tol);
}

}  // namespace

double default_cluster_tol(HolderOrder q, const ScaleLadder& ladder) {
  return 3.0 * std::pow(ladder.finest(), std::min(q.value(), 1.0));
}

SetRepr graphical_derivative_image(const SetValuedMap& F, const Vec& xbar, const Vec& ybar,
                                   const Vec& u, HolderOrder q, const ScaleLadder& ladder,
                                   double cluster_tol) {
  if (graph_residual(F, xbar, ybar) > kMembershipTol * (1.0 + norm2(ybar)))
    throw PreconditionError("graphical_derivative_image: base point is not on gph F");
  if (cluster_tol <= 0.0) cluster_tol = default_cluster_tol(q, ladder);
  const bool inverse_scan = F.inverse_of != nullptr && F.m == 1;
  const double window = inverse_scan ? kInverseScanWindow : kEpsInf;

  const int persist_rungs = 5;
  const int k0 = std::max(0, ladder.rungs - persist_rungs);
  std::vector<RungSet> rungs;
  for (int k = k0; k < ladder.rungs; ++k) {
    if (inverse_scan)
      rungs.push_back(collect_rung_inverse(F, xbar, ybar[0], u, ladder.at(k), q.value()));
    else
      rungs.push_back(collect_rung(F, xbar, ybar, u, ladder.at(k), q.value(), window));
  }

  // an image kind is a property of the map; mixed rungs are not supported
  bool any_cloud = false, any_interval = false;
  for (const RungSet& rs : rungs) {
    any_cloud = any_cloud || rs.cloud;
    any_interval = any_interval || !rs.parts.empty();
  }
  if (any_cloud && any_interval)
    throw UsageError("graphical_derivative_image: map mixes interval and cloud images");

  const bool all_empty =
      std::all_of(rungs.begin(), rungs.end(), [](const RungSet& r) { return r.empty(); });
  if (all_empty) return SetRepr::empty(F.m);

  // drift allowance between adjacent rungs
  const double t_coarse = ladder.at(k0);
  const double dil = std::max(cluster_tol, 8.0 * std::pow(t_coarse, std::min(q.value(), 1.0)));

  // slowly shrinking images that always cover the origin collapse to {0} in
  // the limit even when the per-rung decay outpaces the dilation only over
  // several rungs
  {
    const Vec zero(F.m, 0.0);
    bool shrinking = rungs.size() >= 3;
    double s_first = -1.0, s_last = -1.0;
    for (std::size_t j = 0; j < rungs.size() && shrinking; ++j) {
      const SetRepr set = rungs[j].cloud ? SetRepr::cloud(F.m, rungs[j].points)
                                         : SetRepr::intervals(rungs[j].parts);
      const SetRepr win = set.clipped(window);
      const double s = win.sup_norm();
      if (!std::isfinite(s) || win.is_empty() || win.distance(zero) > dil) {
        shrinking = false;
        break;
      }
      if (j == 0) s_first = s;
      s_last = s;
    }
    if (shrinking && s_first > 4.0 * cluster_tol && s_last <= 0.85 * s_first)
      return F.m == 1 ? SetRepr::singleton(0.0) : SetRepr::point(Vec(F.m, 0.0));
  }

  if (any_interval) {
    std::vector<SetRepr> sets;
    for (const RungSet& rs : rungs) sets.push_back(SetRepr::intervals(rs.parts));
    return persistent_intervals(sets, window, dil, cluster_tol);
  }
  return persistent_cloud(rungs, F.m, dil, cluster_tol);
}

HomogeneousSampler derivative_sampler(const SetValuedMap& F, const Vec& xbar, const Vec& ybar,
                                      HolderOrder q, const ScaleLadder& ladder,
                                      double cluster_tol) {
  HomogeneousSampler H;
  H.n = F.n;
  H.m = F.m;
  H.order = q.value();
  H.image_slack = cluster_tol > 0.0 ? cluster_tol : default_cluster_tol(q, ladder);
  auto cache = std::make_shared<std::map<Vec, SetRepr>>();
  auto mtx = std::make_shared<std::mutex>();
  H.at = [=](const Vec& u) -> SetRepr {
    {
      std::lock_guard<std::mutex> lock(*mtx);
      auto it = cache->find(u);
      if (it != cache->end()) return it->second;
    }
    SetRepr img = graphical_derivative_image(F, xbar, ybar, u, q, ladder, cluster_tol);
    std::lock_guard<std::mutex> lock(*mtx);
    cache->emplace(u, img);
    return img;
  };
  return H;
}

HomogeneousSampler translate_sampler(const HomogeneousSampler& H, const VectorFn& f) {
  HomogeneousSampler out = H;
  auto base = H.at;
  out.at = [base, f](const Vec& u) -> SetRepr {
    SetRepr s = base(u);
    if (s.is_empty()) return s;
    return translated(s, f.eval(u));
  };
  return out;
}

LimitEstimate norm_lower(const HomogeneousSampler& H, const DirectionGrid& grid, int parallel) {
  const int count = static_cast<int>(grid.size());
  const Vec zero(H.m, 0.0);
  std::vector<double> vals(count);
  parallel_for(count, parallel, [&](int i) { vals[i] = H.at(grid.points[i]).distance(zero); });

  LimitEstimate est;
  est.converged = true;
  est.value = kInf;
  for (int i = 0; i < count; ++i) {
    est.per_scale.emplace_back(static_cast<double>(i), vals[i]);
    est.value = std::min(est.value, vals[i]);
  }
  est.verdict = classify_value(est.value);
  return est;
}

LimitEstimate norm_outer(const HomogeneousSampler& H, const DirectionGrid& grid, int parallel) {
  LimitEstimate est;
  est.converged = true;

  // ||H||^+ is finite only if H(0) = {0}
  const SetRepr at0 = H.at(Vec(H.n, 0.0));
  if (at0.sup_norm() > std::max(1e-3, 4.0 * H.image_slack)) {
    est.value = kInf;
    est.verdict = Verdict::Infinite;
    return est;
  }

  const int count = static_cast<int>(grid.size());
  std::vector<double> vals(count);
  parallel_for(count, parallel, [&](int i) { vals[i] = H.at(grid.points[i]).sup_norm(); });
  est.value = 0.0;  // sup over the empty graph
  for (int i = 0; i < count; ++i) {
    est.per_scale.emplace_back(static_cast<double>(i), vals[i]);
    est.value = std::max(est.value, vals[i]);
  }
  est.verdict = classify_value(est.value);
  return est;
}

LimitEstimate norm_star(const HomogeneousSampler& H, const DirectionGrid& grid, int parallel) {
  if (H.n != H.m)
    throw UsageError("norm_star: input and output dimensions must match");
  const int count = static_cast<int>(grid.size());
  std::vector<double> vals(count);
  parallel_for(count, parallel,
               [&](int i) { vals[i] = H.at(grid.points[i]).min_inner_positive(grid.points[i]); });

  LimitEstimate est;
  est.converged = true;
  est.value = kInf;  // dom H within {0} when every direction is empty
  for (int i = 0; i < count; ++i) {
    est.per_scale.emplace_back(static_cast<double>(i), vals[i]);
    est.value = std::min(est.value, vals[i]);
  }
  est.verdict = classify_value(est.value);
  return est;
}

}  // namespace holderreg
