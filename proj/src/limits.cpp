#include "holderreg/limits.hpp"

#include <algorithm>
#include <cmath>

namespace holderreg {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Zero: return "zero";
    case Verdict::Positive: return "positive";
    case Verdict::Infinite: return "infinite";
    case Verdict::Divergent: return "divergent";
  }
  return "divergent";
}

Verdict classify_value(double v, double eps_pos) {
  if (v == kInf) return Verdict::Infinite;
  if (std::abs(v) <= eps_pos) return Verdict::Zero;
  if (v > eps_pos) return Verdict::Positive;
  return Verdict::Divergent;
}

namespace {

constexpr double kGrowthRatio = 1.15;

// Length of the strictly-growing suffix (each step ratio >= kGrowthRatio).
int growing_suffix(const std::vector<double>& v, int sign) {
  int len = 0;
  for (int k = static_cast<int>(v.size()) - 1; k >= 1; --k) {
    const double cur = sign * v[k], prev = sign * v[k - 1];
    if (prev > 1e-300 && cur >= kGrowthRatio * prev)
      ++len;
    else
      break;
  }
  return len;
}

}  // namespace

LimitEstimate analyze_limit(const std::vector<std::pair<double, double>>& per_rung, double ratio,
                            double eps_pos, double eps_inf) {
  LimitEstimate est;
  est.per_scale = per_rung;

  std::vector<double> v;
  std::vector<int> src_row;
  int pos_inf = 0;
  for (std::size_t i = 0; i < per_rung.size(); ++i) {
    const double val = per_rung[i].second;
    if (val == kInf) {
      ++pos_inf;
    } else if (std::isfinite(val)) {
      v.push_back(val);
      src_row.push_back(static_cast<int>(i));
    }
  }
  const int total = static_cast<int>(per_rung.size());
  est.cut_index = total - 1;
  if (v.empty() || pos_inf > total / 2) {
    est.value = kInf;
    est.verdict = Verdict::Infinite;
    est.converged = pos_inf == total;
    return est;
  }

  const int n = static_cast<int>(v.size());

  // diverging tails: a geometric-growth suffix covering most of the ladder
  const int need = std::max(3, n / 2);
  if (growing_suffix(v, +1) >= need && v.back() > std::max(1.0, 100.0 * eps_pos)) {
    est.value = kInf;
    est.verdict = Verdict::Infinite;
    est.converged = false;
    return est;
  }
  if (growing_suffix(v, -1) >= need && v.back() < -std::max(1.0, 100.0 * eps_pos)) {
    est.value = -kInf;
    est.verdict = Verdict::Divergent;
    est.converged = false;
    return est;
  }
  if (v.back() > eps_inf && n >= 2 && v.back() > v[n - 2]) {
    est.value = kInf;
    est.verdict = Verdict::Infinite;
    est.converged = false;
    return est;
  }

  // truncate at the first break of geometric contraction (noise floor)
  const double scale = std::max({std::abs(v.front()), std::abs(v.back()), 1e-12});
  const double dtiny = 1e-9 * scale;
  int cut = n - 1;
  for (int k = 1; k + 1 <= n - 1; ++k) {
    const double d_prev = v[k] - v[k - 1];
    const double d_cur = v[k + 1] - v[k];
    if (std::abs(d_cur) <= dtiny) continue;
    const bool sign_flip = d_prev * d_cur < 0.0 && std::abs(d_prev) > dtiny;
    const bool expanding = std::abs(d_cur) > 1.05 * std::abs(d_prev) + dtiny &&
                           std::abs(d_prev) > dtiny;
    if (sign_flip || expanding) {
      cut = k;
      break;
    }
  }
  est.cut_index = src_row[cut];

  // pure geometric decay toward 0 across the clean prefix: the limit is 0
  if (cut >= 2 && std::abs(v[cut]) <= 0.3 * std::abs(v[0])) {
    const int steps = std::min(3, cut);
    bool decay = true;
    for (int k = cut - steps; k < cut && decay; ++k) {
      if (v[k] * v[k + 1] < 0.0 || std::abs(v[k]) <= dtiny)
        decay = false;
      else
        decay = std::abs(v[k + 1]) <= 0.85 * std::abs(v[k]);
    }
    if (decay) {
      est.value = 0.0;
      est.converged = true;
      est.verdict = classify_value(0.0, eps_pos);
      return est;
    }
  }

  est.value = v[cut];
  if (cut >= 1) {
    const double d_last = v[cut] - v[cut - 1];
    if (std::abs(d_last) > dtiny) {
      double rho = ratio;
      if (cut >= 2) {
        const double d_prevv = v[cut - 1] - v[cut - 2];
        if (std::abs(d_prevv) > dtiny) rho = d_last / d_prevv;
      }
      rho = std::clamp(rho, 0.0, 0.95);
      double tail = d_last * rho / (1.0 - rho);
      tail = std::clamp(tail, -2.0 * std::abs(d_last), 2.0 * std::abs(d_last));
      est.value = v[cut] + tail;
    }
    const double vref = std::max({std::abs(est.value), 1e-2 * std::abs(v.front()), eps_pos});
    est.converged = std::abs(d_last) <= 1e-2 * vref;
  } else {
    est.converged = false;
  }

  est.verdict = classify_value(est.value, eps_pos);
  return est;
}

}  // namespace holderreg
