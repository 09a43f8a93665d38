#pragma once

#include <string>
#include <utility>
#include <vector>

#include "holderreg/types.hpp"

namespace holderreg {

/// Positivity threshold separating "zero" from "positive" estimates.
inline constexpr double kEpsPos = 1e-6;
/// Magnitude past which a finest-rung estimate with growing diagnostics is
/// reported as infinite.
inline constexpr double kEpsInf = 1e6;

enum class Verdict { Zero, Positive, Infinite, Divergent };

std::string to_string(Verdict v);

/// Result of a limit / infimum estimation. `per_scale` records the raw
/// per-rung (or per-direction) values behind the estimate.
struct LimitEstimate {
  double value = 0.0;
  std::vector<std::pair<double, double>> per_scale;
  bool converged = false;
  Verdict verdict = Verdict::Zero;
  int cut_index = -1;  // per_scale row the estimate was anchored at
};

/// Classifies a finite value against the positivity threshold.
Verdict classify_value(double v, double eps_pos = kEpsPos);

/// Turns a per-rung value sequence (t decreasing) into a limit estimate.
///
/// The sequence is scanned for a geometric-growth suffix (reported as
/// infinite / divergent), then truncated at the first break of geometric
/// contraction (discretization noise floor) and extrapolated by the geometric
/// tail sum of the last clean differences. `ratio` is the ladder ratio used
/// when the empirical difference ratio is unusable.
LimitEstimate analyze_limit(const std::vector<std::pair<double, double>>& per_rung, double ratio,
                            double eps_pos = kEpsPos, double eps_inf = kEpsInf);

}  // namespace holderreg
