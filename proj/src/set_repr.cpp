#include "holderreg/set_repr.hpp"

#include <algorithm>

namespace holderreg {

SetRepr SetRepr::empty(int dim) {
  SetRepr s;
  s.kind_ = Kind::Empty;
  s.dim_ = dim;
  return s;
}

SetRepr SetRepr::intervals(std::vector<Interval> parts) {
  parts.erase(std::remove_if(parts.begin(), parts.end(),
                             [](const Interval& iv) { return !iv.valid(); }),
              parts.end());
  if (parts.empty()) return empty(1);
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  merged.push_back(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, parts[i].hi);
    } else {
      merged.push_back(parts[i]);
    }
  }
  SetRepr s;
  s.kind_ = Kind::Intervals;
  s.dim_ = 1;
  s.parts_ = std::move(merged);
  return s;
}

SetRepr SetRepr::cloud(int dim, std::vector<Vec> points) {
  points.erase(std::remove_if(points.begin(), points.end(),
                              [](const Vec& p) {
                                for (double v : p)
                                  if (std::isnan(v) || !std::isfinite(v)) return true;
                                return false;
                              }),
               points.end());
  if (points.empty()) return empty(dim);
  SetRepr s;
  s.kind_ = Kind::Cloud;
  s.dim_ = dim;
  s.points_ = std::move(points);
  return s;
}

double SetRepr::distance(const Vec& y) const {
  if (static_cast<int>(y.size()) != dim_)
    throw UsageError("set_distance: point dimension " + std::to_string(y.size()) +
                     " does not match set dimension " + std::to_string(dim_));
  switch (kind_) {
    case Kind::Empty:
      return kInf;  // inf over the empty set
    case Kind::Intervals: {
      double best = kInf;
      for (const Interval& iv : parts_) best = std::min(best, interval_distance(y[0], iv));
      return best;
    }
    case Kind::Cloud: {
      double best = kInf;
      for (const Vec& p : points_) best = std::min(best, dist2(y, p));
      return best;
    }
  }
  return kInf;
}

double SetRepr::sup_norm() const {
  switch (kind_) {
    case Kind::Empty:
      return 0.0;  // sup over the empty set
    case Kind::Intervals: {
      double best = 0.0;
      for (const Interval& iv : parts_) {
        if (iv.unbounded_above() || iv.unbounded_below()) return kInf;
        best = std::max({best, std::abs(iv.lo), std::abs(iv.hi)});
      }
      return best;
    }
    case Kind::Cloud: {
      double best = 0.0;
      for (const Vec& p : points_) best = std::max(best, norm2(p));
      return best;
    }
  }
  return 0.0;
}

double SetRepr::min_inner_positive(const Vec& u) const {
  if (is_empty()) return kInf;
  if (kind_ == Kind::Intervals) {
    if (u.size() != 1) throw UsageError("min_inner_positive: interval body needs a 1-d direction");
    double best = kInf;
    for (const Interval& iv : parts_) {
      // <y, u> over y in [lo, hi] ranges over [min(lo*u, hi*u), ...];
      // the positive part is monotone, so its inf is (range minimum)_+.
      const double a = iv.lo * u[0];
      const double b = iv.hi * u[0];
      double lo = std::min(a, b);
      if (std::isnan(lo)) lo = 0.0;  // 0 * inf endpoints
      best = std::min(best, positive_part(lo));
    }
    return best;
  }
  double best = kInf;
  for (const Vec& p : points_) best = std::min(best, positive_part(dot(p, u)));
  return best;
}

SetRepr SetRepr::rescaled(const Vec& shift, double scale) const {
  switch (kind_) {
    case Kind::Empty:
      return *this;
    case Kind::Intervals: {
      std::vector<Interval> out;
      out.reserve(parts_.size());
      for (const Interval& iv : parts_)
        out.push_back({(iv.lo - shift[0]) / scale, (iv.hi - shift[0]) / scale});
      return intervals(std::move(out));
    }
    case Kind::Cloud: {
      std::vector<Vec> out;
      out.reserve(points_.size());
      for (const Vec& p : points_) out.push_back((1.0 / scale) * (p - shift));
      return cloud(dim_, std::move(out));
    }
  }
  return *this;
}

SetRepr SetRepr::clipped(double w) const {
  switch (kind_) {
    case Kind::Empty:
      return *this;
    case Kind::Intervals: {
      std::vector<Interval> out;
      for (const Interval& iv : parts_) {
        Interval c{std::max(iv.lo, -w), std::min(iv.hi, w)};
        if (c.valid()) out.push_back(c);
      }
      return out.empty() ? empty(1) : intervals(std::move(out));
    }
    case Kind::Cloud: {
      std::vector<Vec> out;
      for (const Vec& p : points_)
        if (norm2(p) <= w) out.push_back(p);
      return cloud(dim_, std::move(out));
    }
  }
  return *this;
}

SetRepr SetRepr::dilated(double eps) const {
  if (kind_ != Kind::Intervals) return *this;
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const Interval& iv : parts_) out.push_back({iv.lo - eps, iv.hi + eps});
  return intervals(std::move(out));
}

SetRepr SetRepr::intersect(const SetRepr& a, const SetRepr& b) {
  if (a.is_empty() || b.is_empty()) return empty(1);
  std::vector<Interval> out;
  for (const Interval& x : a.parts_)
    for (const Interval& y : b.parts_) {
      Interval c{std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
      if (c.valid()) out.push_back(c);
    }
  return out.empty() ? empty(1) : intervals(std::move(out));
}

SetRepr SetRepr::cluster_merged(double tol) const {
  switch (kind_) {
    case Kind::Empty:
      return *this;
    case Kind::Intervals: {
      std::vector<Interval> out;
      for (Interval iv : parts_) {
        if (std::abs(iv.lo) <= tol) iv.lo = 0.0;
        if (std::abs(iv.hi) <= tol) iv.hi = 0.0;
        if (!out.empty() && iv.lo <= out.back().hi + tol)
          out.back().hi = std::max(out.back().hi, iv.hi);
        else
          out.push_back(iv);
      }
      return intervals(std::move(out));
    }
    case Kind::Cloud: {
      std::vector<Vec> reps;
      std::vector<int> counts;
      for (const Vec& p : points_) {
        bool merged = false;
        for (std::size_t i = 0; i < reps.size(); ++i) {
          if (dist2(reps[i], p) <= tol) {
            // running mean of the cluster
            for (std::size_t d = 0; d < p.size(); ++d)
              reps[i][d] = (reps[i][d] * counts[i] + p[d]) / (counts[i] + 1);
            ++counts[i];
            merged = true;
            break;
          }
        }
        if (!merged) {
          reps.push_back(p);
          counts.push_back(1);
        }
      }
      for (Vec& r : reps)
        for (double& v : r)
          if (std::abs(v) <= tol) v = 0.0;
      return cloud(dim_, std::move(reps));
    }
  }
  return *this;
}

}  // namespace holderreg
