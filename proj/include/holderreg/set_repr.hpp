#pragma once

#include <optional>
#include <vector>

#include "holderreg/types.hpp"

namespace holderreg {

/// Closed interval with extended-real endpoints.
struct Interval {
  double lo;
  double hi;

  bool valid() const { return lo <= hi && !std::isnan(lo) && !std::isnan(hi); }
  bool unbounded_above() const { return hi == kInf; }
  bool unbounded_below() const { return lo == -kInf; }
};

/// Finite description of a subset of R^m with exact distance queries.
///
/// Two bodies are supported: finite unions of closed intervals (m = 1,
/// endpoints may be +-inf) and finite point clouds (any m). The empty set is
/// its own state so the conventions sup(empty) = 0 and inf(empty) = +inf stay
/// explicit at the call sites.
class SetRepr {
public:
  enum class Kind { Empty, Intervals, Cloud };

  static SetRepr empty(int dim);
  /// Normalizes on construction: sorts and merges overlapping intervals.
  static SetRepr intervals(std::vector<Interval> parts);
  static SetRepr singleton(double v) { return intervals({{v, v}}); }
  static SetRepr cloud(int dim, std::vector<Vec> points);
  static SetRepr point(const Vec& p) { return cloud(static_cast<int>(p.size()), {p}); }
  static SetRepr whole_line() { return intervals({{-kInf, kInf}}); }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_empty() const { return kind_ == Kind::Empty; }

  const std::vector<Interval>& parts() const { return parts_; }
  const std::vector<Vec>& points() const { return points_; }

  /// Exact Euclidean distance d(y, S); +inf when S is empty.
  double distance(const Vec& y) const;
  double distance(double y) const { return distance(Vec{y}); }

  bool contains(const Vec& y, double tol) const { return distance(y) <= tol; }

  /// sup ||y|| over the set; +inf when unbounded, 0 for the empty set
  /// (sup over the empty index set).
  double sup_norm() const;

  /// inf over the set of the positive part of <y, u>; +inf when empty.
  /// Interval bodies require dim(u) == 1.
  double min_inner_positive(const Vec& u) const;

  /// Affine image (S - shift) / scale, exact for both bodies. scale > 0.
  SetRepr rescaled(const Vec& shift, double scale) const;

  /// Intersection with [-w, w] (interval bodies) or norm-ball of radius w
  /// (clouds). Used to window derivative rescalings before persistence tests.
  SetRepr clipped(double w) const;

  /// Minkowski dilation by eps (intervals only widen; clouds stay points and
  /// the dilation is applied inside distance-based persistence instead).
  SetRepr dilated(double eps) const;

  /// Intersection of two interval unions (dim 1). Empty-safe.
  static SetRepr intersect(const SetRepr& a, const SetRepr& b);

  /// Merges interval endpoints / cloud points closer than tol and snaps
  /// near-zero interval endpoints to exactly 0.
  SetRepr cluster_merged(double tol) const;

private:
  Kind kind_ = Kind::Empty;
  int dim_ = 1;
  std::vector<Interval> parts_;  // Kind::Intervals, sorted and disjoint
  std::vector<Vec> points_;      // Kind::Cloud
};

/// Distance from y to a single interval.
inline double interval_distance(double y, const Interval& iv) {
  if (y < iv.lo) return iv.lo - y;
  if (y > iv.hi) return y - iv.hi;
  return 0.0;
}

}  // namespace holderreg
