#include "holderreg/lsip.hpp"

#include <algorithm>
#include <cmath>

#include "holderreg/sampling.hpp"
#include "holderreg/subderivative.hpp"

namespace holderreg::lsip {

DiscretizedLsip discretize(const LsipProblem& p, int N) {
  DiscretizedLsip d;
  d.n = p.n;
  d.c = p.c;
  if (!p.parametric) {
    d.rows = p.finite_rows;
    d.t.resize(d.rows.size());
    for (std::size_t i = 0; i < d.rows.size(); ++i) d.t[i] = static_cast<double>(i);
    return d;
  }
  if (N < 2) throw UsageError("discretize: need at least 2 index points");
  d.from_parametric = true;
  d.grid_step = (p.t_hi - p.t_lo) / (N - 1);
  d.t.reserve(N);
  d.rows.reserve(N);
  for (int j = 0; j < N; ++j) {
    const double t = p.t_lo + (p.t_hi - p.t_lo) * j / (N - 1);
    auto [a, b] = p.family(t);
    if (static_cast<int>(a.size()) != p.n)
      throw UsageError("discretize: family row dimension mismatch");
    d.t.push_back(t);
    d.rows.push_back({std::move(a), b});
  }
  return d;
}

double feasibility_residual(const Vec& x, const DiscretizedLsip& d) {
  double worst = -kInf;
  for (const lp::Constraint& r : d.rows) worst = std::max(worst, dot(r.a, x) - r.b);
  return worst;
}

lp::Solution solve(const DiscretizedLsip& d) { return lp::solve_lp(d.c, d.rows); }

SlaterReport slater_check(const DiscretizedLsip& d, double box_bound) {
  // maximize s subject to <a_t, x> + s <= b_t, |x_i| <= box_bound
  const int n = d.n;
  Vec cost(n + 1, 0.0);
  cost[n] = -1.0;
  std::vector<lp::Constraint> rows;
  rows.reserve(d.rows.size() + 2 * n);
  for (const lp::Constraint& r : d.rows) {
    Vec a = r.a;
    a.push_back(1.0);
    rows.push_back({std::move(a), r.b});
  }
  for (int i = 0; i < n; ++i) {
    Vec a(n + 1, 0.0), na(n + 1, 0.0);
    a[i] = 1.0;
    na[i] = -1.0;
    rows.push_back({a, box_bound});
    rows.push_back({na, box_bound});
  }
  const lp::Solution sol = lp::solve_lp(cost, rows);
  SlaterReport rep;
  if (sol.status != lp::Status::Optimal) return rep;
  rep.margin = sol.x[n];
  rep.holds = rep.margin > 1e-8;
  rep.witness = Vec(sol.x.begin(), sol.x.begin() + n);
  return rep;
}

double default_active_tol(const DiscretizedLsip& d) {
  double bmax = 0.0;
  for (const lp::Constraint& r : d.rows) bmax = std::max(bmax, std::abs(r.b));
  double tol = 1e-6 * (1.0 + bmax);
  if (d.from_parametric) tol = std::max(tol, 2.0 * d.grid_step * d.grid_step * (1.0 + bmax));
  return tol;
}

std::vector<int> active_indices(const Vec& x, const DiscretizedLsip& d, double tol) {
  if (tol < 0.0) tol = default_active_tol(d);
  if (feasibility_residual(x, d) > tol)
    throw PreconditionError("active_indices: point is not feasible within tolerance");
  std::vector<int> act;
  for (std::size_t i = 0; i < d.rows.size(); ++i)
    if (std::abs(dot(d.rows[i].a, x) - d.rows[i].b) <= tol) act.push_back(static_cast<int>(i));
  return act;
}

ScalarFn canonical_f(const DiscretizedLsip& d, const Vec& xbar) {
  if (feasibility_residual(xbar, d) > default_active_tol(d))
    throw PreconditionError("canonical_f: xbar is not feasible");
  ScalarFn f;
  f.n = d.n;
  auto rows = std::make_shared<std::vector<lp::Constraint>>(d.rows);
  const Vec c = d.c;
  f.eval = [rows, c, xbar](const Vec& x) {
    double v = dot(c, x) - dot(c, xbar);
    for (const lp::Constraint& r : *rows) v = std::max(v, dot(r.a, x) - r.b);
    return v;
  };
  return f;
}

namespace {

void subsets_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (k == 0)
    fn({});
  else
    rec(0, 0);
}

}  // namespace

EncReport enc_check(const DiscretizedLsip& d, const Vec& xbar) {
  EncReport rep;
  rep.slater = slater_check(d).holds;
  if (!rep.slater) {
    rep.holds = false;  // ENC presumes the Slater condition
    return rep;
  }
  const std::vector<int> act = active_indices(xbar, d);
  if (act.size() > 30)
    throw UsageError("enc_check: active set too large (" + std::to_string(act.size()) +
                     " rows); tighten the active tolerance");

  Vec neg_c = d.c;
  for (double& v : neg_c) v = -v;
  const double tol_cone =
      d.from_parametric ? std::max(1e-9, 1.5 * d.grid_step * (1.0 + norm2(d.c))) : 1e-9;

  rep.holds = true;
  double best = kInf;
  const int max_size = std::min<int>(d.n - 1, static_cast<int>(act.size()));
  for (int k = 0; k <= max_size; ++k) {
    subsets_of_size(static_cast<int>(act.size()), k, [&](const std::vector<int>& pick) {
      std::vector<Vec> gens;
      gens.reserve(pick.size());
      std::vector<int> rows_abs;
      for (int p : pick) {
        gens.push_back(d.rows[act[p]].a);
        rows_abs.push_back(act[p]);
      }
      const double resid = lp::cone_residual(gens, neg_c);
      if (resid <= tol_cone && resid < best) {
        best = resid;
        rep.holds = false;
        rep.witness_rows = rows_abs;
        rep.witness_residual = resid;
      }
    });
  }
  for (int r : rep.witness_rows) rep.witness_t.push_back(d.t[r]);
  return rep;
}

ScaleLadder lsip_ladder(const DiscretizedLsip& d) {
  const double t0 = 0.1, theta = 0.5;
  double t_min = 1e-7;
  if (d.from_parametric) t_min = std::max(t_min, 0.3 * d.grid_step);
  int rungs = 2;
  while (rungs < 20 && t0 * std::pow(theta, rungs) >= t_min) ++rungs;
  return make_scale_ladder(t0, theta, std::max(rungs, 3));
}

CalmnessCertificate calmness_certificate(const DiscretizedLsip& d, const Vec& xbar,
                                         HolderOrder q, int parallel) {
  if (!slater_check(d).holds)
    throw PreconditionError("calmness_certificate: the Slater condition fails");
  const lp::Solution sol = solve(d);
  if (sol.status != lp::Status::Optimal)
    throw PreconditionError("calmness_certificate: the program has no optimal solution");
  const double scale = 1.0 + std::abs(sol.objective);
  if (feasibility_residual(xbar, d) > default_active_tol(d) ||
      dot(d.c, xbar) - sol.objective > 1e-6 * scale)
    throw PreconditionError("calmness_certificate: xbar does not solve the program");

  // uniqueness probe: optimize +-e_i over the optimal face
  std::vector<lp::Constraint> face = d.rows;
  face.push_back({d.c, sol.objective + 1e-9 * scale});
  for (int i = 0; i < d.n; ++i) {
    for (double s : {1.0, -1.0}) {
      Vec e(d.n, 0.0);
      e[i] = s;
      const lp::Solution probe = lp::solve_lp(e, face);
      if (probe.status != lp::Status::Optimal || norm_inf(probe.x - xbar) > 1e-6)
        throw PreconditionError("calmness_certificate: the solution is not unique");
    }
  }

  CalmnessCertificate cert;
  cert.q = q.value();
  const ScalarFn f = canonical_f(d, xbar);
  const DirectionGrid grid = make_direction_grid(d.n, default_direction_count(d.n));
  cert.norm = subderivative_norm(f, xbar, q, grid, lsip_ladder(d), parallel);
  cert.certified =
      cert.norm.verdict == Verdict::Positive || cert.norm.verdict == Verdict::Infinite;

  if (d.from_parametric) {
    cert.outer_norm_condition = "not applicable (infinite index set discretized)";
  } else {
    // finite index set: empirical growth test of ||x(delta b) - xbar|| against
    // ||delta b||^(1/q) along coordinate perturbations
    double worst_growth = 0.0;
    bool bounded = true;
    for (std::size_t i = 0; i < d.rows.size() && bounded; ++i) {
      double prev = -1.0;
      for (double delta : {1e-3, 1e-5}) {
        DiscretizedLsip pert = d;
        pert.rows[i].b += delta;
        const lp::Solution ps = lp::solve_lp(pert.c, pert.rows);
        if (ps.status != lp::Status::Optimal) continue;
        const double quot = norm2(ps.x - xbar) / std::pow(delta, 1.0 / q.value());
        if (prev >= 0.0 && quot > 3.0 * std::max(prev, 1e-12)) bounded = false;
        worst_growth = std::max(worst_growth, quot);
        prev = quot;
      }
    }
    cert.outer_norm_condition = bounded ? "finite (empirical)" : "infinite (empirical)";
  }
  return cert;
}

std::vector<std::function<double(double)>> perturbation_profiles(const DiscretizedLsip& d) {
  std::vector<std::function<double(double)>> profiles;
  if (d.from_parametric) {
    profiles.push_back([](double) { return 1.0; });
    profiles.push_back([](double) { return -1.0; });
    profiles.push_back([](double t) { return std::cos(t); });
    profiles.push_back([](double t) { return std::sin(t); });
    profiles.push_back([](double t) { return std::cos(2.0 * t); });
    profiles.push_back([](double t) { return std::sin(2.0 * t); });
    profiles.push_back([](double t) {
      const double d0 = t - M_PI;
      return std::exp(-8.0 * d0 * d0);
    });
    profiles.push_back([](double t) {
      const double d0 = t - 0.5 * M_PI;
      return std::exp(-8.0 * d0 * d0);
    });
  } else {
    const int m = static_cast<int>(d.rows.size());
    for (int j = 0; j < std::min(8, 2 * m); ++j) {
      const int row = j / 2;
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      profiles.push_back([row, sign, m](double t) {
        return (static_cast<int>(t) % m == row) ? sign : 0.0;
      });
    }
  }
  return profiles;
}

EmpiricalCalmness empirical_calmness(const DiscretizedLsip& d, const Vec& xbar, HolderOrder q,
                                     const std::vector<double>& deltas) {
  EmpiricalCalmness out;
  const auto profiles = perturbation_profiles(d);
  for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
    for (double delta : deltas) {
      if (delta <= 0.0) continue;
      DiscretizedLsip pert = d;
      double phi_norm = 0.0;
      for (std::size_t r = 0; r < pert.rows.size(); ++r) {
        const double phi = profiles[pi](pert.t[r]);
        phi_norm = std::max(phi_norm, std::abs(phi));
        pert.rows[r].b += delta * phi;
      }
      if (phi_norm <= 0.0) continue;
      const lp::Solution sol = lp::solve_lp(pert.c, pert.rows);
      if (sol.status != lp::Status::Optimal) {
        ++out.skipped;
        continue;
      }
      const double move = norm2(sol.x - xbar);
      if (move <= 1e-14) continue;  // solution did not move; no bound obtained
      EmpiricalSample s;
      s.profile = static_cast<int>(pi);
      s.delta = delta;
      s.solution = sol.x;
      s.quotient = delta * phi_norm / std::pow(move, q.value());
      out.samples.push_back(s);
      if (s.quotient < out.min_quotient) {
        out.min_quotient = s.quotient;
        out.argmin = s;
      }
    }
  }
  return out;
}

}  // namespace holderreg::lsip
