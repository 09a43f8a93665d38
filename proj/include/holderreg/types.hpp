#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace holderreg {

using Vec = std::vector<double>;

// Extended reals: +inf encodes "outside domain" / empty-distance, NaN is never
// a legal value anywhere in the toolkit.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }
inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// Thrown on malformed inputs (bad parameters, dimension mismatches,
/// unparsable problem files). CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an operation's mathematical precondition fails (base point not
/// on the graph, Slater condition violated, ...). CLI maps it to exit code 3.
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// Holder exponent q > 0. A thin strong type so call sites cannot confuse the
/// order with radii or tolerances.
struct HolderOrder {
  double q;

  explicit HolderOrder(double q_) : q(q_) {
    if (!(q_ > 0.0) || !std::isfinite(q_))
      throw UsageError("Holder order must be a finite positive real, got " + std::to_string(q_));
  }
  double value() const { return q; }
  HolderOrder inverse() const { return HolderOrder(1.0 / q); }
};

// -- small dense vector helpers (n <= 3 in all default configurations) -------

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline Vec operator+(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vec operator-(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline Vec operator*(double s, Vec a) {
  for (double& x : a) x *= s;
  return a;
}

inline double dist2(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Vec concat(const Vec& a, const Vec& b) {
  Vec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

/// Axis-aligned box, used for domain hints and sampling windows.
struct Box {
  Vec lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& x) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
  static Box centered(const Vec& c, double halfwidth) {
    Box b{c, c};
    for (auto& v : b.lo) v -= halfwidth;
    for (auto& v : b.hi) v += halfwidth;
    return b;
  }
};

}  // namespace holderreg
