#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "holderreg/types.hpp"

namespace holderreg {

/// Geometric sequence t_k = t0 * theta^k, k = 0..K-1, realizing t_k -> 0 in
/// all limit estimators. Strictly decreasing by construction.
struct ScaleLadder {
  double t0;
  double theta;
  int rungs;

  double at(int k) const;
  double finest() const { return at(rungs - 1); }
  std::vector<double> values() const;
};

/// Defaults: t0 = 1e-1, theta = 0.5, K = 20.
ScaleLadder make_scale_ladder(double t0 = 1e-1, double theta = 0.5, int rungs = 20);

/// Radii ladder for neighborhood-shrinking modulus estimators:
/// r_k = 0.5 * 0.5^k, K = 12.
ScaleLadder make_radii_ladder(double r0 = 0.5, double ratio = 0.5, int rungs = 12);

/// Deterministic set of unit directions realizing infima over the sphere.
/// n = 1: {-1, +1}; n = 2: M equal angles; n = 3: M-point Fibonacci lattice;
/// n > 3 requires an explicit opt-in and uses seeded random directions.
struct DirectionGrid {
  int n;
  std::vector<Vec> points;

  std::size_t size() const { return points.size(); }
};

DirectionGrid make_direction_grid(int n, int count, bool allow_high_dim = false,
                                  std::uint64_t seed = 0);

/// Default direction count per ambient dimension (1 -> 2, 2 -> 64, 3 -> 350).
int default_direction_count(int n);

/// Deterministic low-discrepancy points in the annulus
/// r_in < ||x - center|| <= r_out. Directions follow golden-ratio sequences,
/// radii a van der Corput sequence.
std::vector<Vec> annulus_points(const Vec& center, double r_in, double r_out, int count);

/// Van der Corput radical-inverse sequence in (0, 1), base 2.
double van_der_corput(std::uint32_t i);

/// Deterministic minimizer of phi over the max-norm box of half-width radius
/// around center: coarse grid plus recursive refinement around the best cells.
/// The box center is always evaluated. Returns the best value found.
double box_min(const std::function<double(const Vec&)>& phi, const Vec& center, double radius,
               int levels = 4);

/// Same sweep recording min and max together (used by two-sided limit
/// estimates where single-valuedness is being tested).
struct MinMax {
  double min;
  double max;
};
MinMax box_min_max(const std::function<double(const Vec&)>& phi, const Vec& center, double radius,
                   int levels = 4);

/// Runs fn(i) for i in [0, count) over `degree` threads; results must be
/// written to pre-sized slots so the reduction order stays fixed.
void parallel_for(int count, int degree, const std::function<void(int)>& fn);

}  // namespace holderreg
