#include "holderreg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace holderreg {

double ScaleLadder::at(int k) const { return t0 * std::pow(theta, k); }

std::vector<double> ScaleLadder::values() const {
  std::vector<double> v(rungs);
  for (int k = 0; k < rungs; ++k) v[k] = at(k);
  return v;
}

ScaleLadder make_scale_ladder(double t0, double theta, int rungs) {
  if (!(t0 > 0.0) || !std::isfinite(t0))
    throw UsageError("scale ladder: t0 must be positive and finite");
  if (!(theta > 0.0 && theta < 1.0))
    throw UsageError("scale ladder: theta must lie in (0, 1)");
  if (rungs < 2) throw UsageError("scale ladder: need at least 2 rungs");
  return ScaleLadder{t0, theta, rungs};
}

ScaleLadder make_radii_ladder(double r0, double ratio, int rungs) {
  return make_scale_ladder(r0, ratio, rungs);
}

int default_direction_count(int n) {
  switch (n) {
    case 1: return 2;
    case 2: return 64;
    case 3: return 350;
    default: return 512;
  }
}

DirectionGrid make_direction_grid(int n, int count, bool allow_high_dim, std::uint64_t seed) {
  if (n < 1) throw UsageError("direction grid: dimension must be >= 1");
  if (count < 2) throw UsageError("direction grid: need at least 2 directions");
  DirectionGrid grid;
  grid.n = n;
  if (n == 1) {
    grid.points = {Vec{-1.0}, Vec{1.0}};
    return grid;
  }
  if (n == 2) {
    grid.points.reserve(count);
    for (int j = 0; j < count; ++j) {
      const double a = 2.0 * M_PI * j / count;
      grid.points.push_back(Vec{std::cos(a), std::sin(a)});
    }
    return grid;
  }
  if (n == 3) {
    // Fibonacci sphere lattice
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    grid.points.reserve(count);
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - (2.0 * j + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * j;
      Vec p{r * std::cos(a), r * std::sin(a), z};
      const double nrm = norm2(p);
      for (double& v : p) v /= nrm;
      grid.points.push_back(std::move(p));
    }
    return grid;
  }
  if (!allow_high_dim)
    throw UsageError("direction grid: dimension " + std::to_string(n) +
                     " > 3 requires the high-dimension override");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  grid.points.reserve(count);
  for (int j = 0; j < count; ++j) {
    Vec p(n);
    double nrm = 0.0;
    do {
      for (double& v : p) v = gauss(rng);
      nrm = norm2(p);
    } while (nrm < 1e-12);
    for (double& v : p) v /= nrm;
    grid.points.push_back(std::move(p));
  }
  return grid;
}

double van_der_corput(std::uint32_t i) {
  double q = 0.0, bk = 0.5;
  ++i;  // skip the 0 term
  while (i > 0) {
    if (i & 1u) q += bk;
    i >>= 1;
    bk *= 0.5;
  }
  return q;
}

std::vector<Vec> annulus_points(const Vec& center, double r_in, double r_out, int count) {
  const int n = static_cast<int>(center.size());
  std::vector<Vec> pts;
  pts.reserve(count);
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double u = van_der_corput(static_cast<std::uint32_t>(i));
    const double r = r_in + (r_out - r_in) * std::max(u, 1e-6);
    Vec dir(n);
    if (n == 1) {
      dir[0] = (i % 2 == 0) ? 1.0 : -1.0;
    } else if (n == 2) {
      const double a = golden_angle * i;
      dir = {std::cos(a), std::sin(a)};
    } else {
      const double z = 1.0 - 2.0 * ((i + 0.5) / count);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden_angle * i;
      dir = {rho * std::cos(a), rho * std::sin(a), z};
      if (n > 3) {
        dir.resize(n, 0.0);  // high-dim callers pre-rotate via direction grids
      }
    }
    pts.push_back(center + r * dir);
  }
  return pts;
}

namespace {

// One grid sweep over the box, keeping the k best points.
void grid_sweep(const std::function<double(const Vec&)>& phi, const Vec& center, double radius,
                int per_axis, std::vector<std::pair<double, Vec>>& best, std::size_t keep) {
  const int n = static_cast<int>(center.size());
  std::vector<int> idx(n, 0);
  Vec x(n);
  const int total = static_cast<int>(std::llround(std::pow(per_axis, n)));
  for (int flat = 0; flat < total; ++flat) {
    int rem = flat;
    for (int d = 0; d < n; ++d) {
      idx[d] = rem % per_axis;
      rem /= per_axis;
      x[d] = center[d] + radius * (2.0 * idx[d] / (per_axis - 1) - 1.0);
    }
    const double v = phi(x);
    if (std::isnan(v)) continue;
    best.emplace_back(v, x);
  }
  std::sort(best.begin(), best.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (best.size() > keep) best.resize(keep);
}

int per_axis_for_dim(int n) {
  switch (n) {
    case 1: return 17;
    case 2: return 9;
    default: return 5;
  }
}

}  // namespace

double box_min(const std::function<double(const Vec&)>& phi, const Vec& center, double radius,
               int levels) {
  const int n = static_cast<int>(center.size());
  const int per_axis = per_axis_for_dim(n);
  double best_val = phi(center);  // the center (u = x) is always a candidate
  std::vector<std::pair<double, Vec>> frontier;
  grid_sweep(phi, center, radius, per_axis, frontier, 3);
  double r = radius;
  for (int lvl = 1; lvl < levels && !frontier.empty(); ++lvl) {
    r *= 2.0 / (per_axis - 1);
    std::vector<std::pair<double, Vec>> next;
    for (const auto& [v, c] : frontier) {
      best_val = std::min(best_val, v);
      grid_sweep(phi, c, r, per_axis, next, 3);
    }
    frontier = std::move(next);
  }
  for (const auto& [v, c] : frontier) best_val = std::min(best_val, v);
  return best_val;
}

MinMax box_min_max(const std::function<double(const Vec&)>& phi, const Vec& center, double radius,
                   int levels) {
  MinMax mm{kInf, -kInf};
  auto track_max = [&](const Vec& x) {
    const double v = phi(x);
    mm.max = std::max(mm.max, v);
    return v;
  };
  mm.min = box_min(track_max, center, radius, levels);
  // max needs its own refinement: rerun on the negated function
  auto neg = [&](const Vec& x) { return -phi(x); };
  mm.max = std::max(mm.max, -box_min(neg, center, radius, levels));
  return mm;
}

void parallel_for(int count, int degree, const std::function<void(int)>& fn) {
  if (degree <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = std::min(degree, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace holderreg
