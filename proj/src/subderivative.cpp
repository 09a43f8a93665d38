#include "holderreg/subderivative.hpp"

#include <algorithm>
#include <cmath>

namespace holderreg {

namespace {

std::vector<std::pair<double, double>> rung_minima(const ScalarFn& f, const Vec& xbar,
                                                   const Vec& x, double q,
                                                   const ScaleLadder& ladder) {
  const double f0 = f.eval(xbar);
  if (!std::isfinite(f0))
    throw PreconditionError("hadamard_subderivative: f(xbar) must be finite");
  std::vector<std::pair<double, double>> rows;
  rows.reserve(ladder.rungs);
  for (int k = 0; k < ladder.rungs; ++k) {
    const double t = ladder.at(k);
    const double tq = std::pow(t, q);
    auto quotient = [&](const Vec& u) {
      const double v = f.eval(xbar + t * u);
      if (v == kInf) return kInf;
      return (v - f0) / tq;
    };
    rows.emplace_back(t, box_min(quotient, x, t));
  }
  return rows;
}

}  // namespace

LimitEstimate hadamard_subderivative(const ScalarFn& f, const Vec& xbar, const Vec& x,
                                     HolderOrder q, const ScaleLadder& ladder) {
  auto rows = rung_minima(f, xbar, x, q.value(), ladder);
  LimitEstimate est = analyze_limit(rows, ladder.theta);
  if (norm2(x) == 0.0 && est.value > -kEpsPos && est.value != kInf) {
    // at the zero direction the subderivative is 0 unless it diverges to -inf
    est.value = 0.0;
    est.verdict = Verdict::Zero;
    est.converged = true;
  }
  return est;
}

LimitEstimate subderivative_norm(const ScalarFn& f, const Vec& xbar, HolderOrder q,
                                 const DirectionGrid& grid, const ScaleLadder& ladder,
                                 int parallel) {
  const int count = static_cast<int>(grid.size());
  std::vector<LimitEstimate> per_dir(count);
  parallel_for(count, parallel, [&](int i) {
    per_dir[i] = hadamard_subderivative(f, xbar, grid.points[i], q, ladder);
  });

  LimitEstimate norm;
  norm.value = kInf;
  norm.converged = true;
  int arg = -1;
  for (int i = 0; i < count; ++i) {
    double plus = per_dir[i].value == -kInf ? 0.0 : positive_part(per_dir[i].value);
    norm.per_scale.emplace_back(static_cast<double>(i), plus);
    if (plus < norm.value) {
      norm.value = plus;
      arg = i;
    }
  }
  if (arg >= 0) norm.converged = per_dir[arg].converged;
  norm.verdict = classify_value(norm.value);
  return norm;
}

HadamardDerivative hadamard_derivative(const ScalarFn& g, const Vec& xbar, const Vec& x,
                                       HolderOrder q, const ScaleLadder& ladder) {
  const double g0 = g.eval(xbar);
  if (!std::isfinite(g0)) throw PreconditionError("hadamard_derivative: g(xbar) must be finite");
  std::vector<std::pair<double, double>> mins, mids;
  std::vector<double> spreads;
  for (int k = 0; k < ladder.rungs; ++k) {
    const double t = ladder.at(k);
    const double tq = std::pow(t, q.value());
    auto quotient = [&](const Vec& u) {
      const double v = g.eval(xbar + t * u);
      if (v == kInf) return kInf;
      return (v - g0) / tq;
    };
    const MinMax mm = box_min_max(quotient, x, t);
    mins.emplace_back(t, mm.min);
    mids.emplace_back(t, std::isfinite(mm.max) ? 0.5 * (mm.min + mm.max) : mm.min);
    spreads.push_back(std::isfinite(mm.max) && std::isfinite(mm.min) ? mm.max - mm.min : kInf);
  }
  HadamardDerivative d;
  d.detail = analyze_limit(mids, ladder.theta);
  d.value = d.detail.value;

  // single-valued when the two-sided spread vanishes relative to the value
  // scale on the finest clean rungs
  const double ref = std::max(1.0, std::abs(d.value));
  int clean = static_cast<int>(spreads.size()) - 1;
  while (clean > 0 && !std::isfinite(spreads[clean])) --clean;
  d.single_valued = std::isfinite(d.value) && d.detail.converged && clean >= 1 &&
                    spreads[clean] <= 1e-2 * ref && spreads[clean - 1] <= 2e-2 * ref;
  return d;
}

VectorDerivative hadamard_derivative_vec(const VectorFn& g, const Vec& xbar, const Vec& x,
                                         HolderOrder q, const ScaleLadder& ladder) {
  VectorDerivative out;
  out.value.resize(g.m);
  out.single_valued = true;
  for (int c = 0; c < g.m; ++c) {
    ScalarFn comp;
    comp.n = g.n;
    comp.eval = [&g, c](const Vec& v) { return g.eval(v)[c]; };
    const HadamardDerivative d = hadamard_derivative(comp, xbar, x, q, ladder);
    out.value[c] = d.value;
    out.single_valued = out.single_valued && d.single_valued;
  }
  return out;
}

}  // namespace holderreg
