#include "holderreg/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace holderreg::lp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "infeasible";
}

namespace {

// Dense tableau for min c.z s.t. Az = b, z >= 0, b >= 0. Columns of A must
// already contain any slack structure; artificials are appended here.
class Tableau {
public:
  Tableau(std::vector<Vec> cols, Vec b, double tol)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(cols.size())),
        tol_(tol),
        b_(std::move(b)) {
    // layout: structural columns, artificial columns, rhs
    t_.assign(m_, Vec(n_ + m_ + 1, 0.0));
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < m_; ++i) t_[i][j] = cols[j][i];
    for (int i = 0; i < m_; ++i) {
      t_[i][n_ + i] = 1.0;
      t_[i].back() = b_[i];
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  int cols_total() const { return n_ + m_; }

  /// Replaces the artificial in row i by structural column j when possible.
  void try_seed_basis(int i, int j) {
    if (std::abs(t_[i][j] - 1.0) < tol_) {
      bool clean = true;
      for (int r = 0; r < m_ && clean; ++r)
        if (r != i && std::abs(t_[r][j]) > tol_) clean = false;
      if (clean) basis_[i] = j;
    }
  }

  Status run_phase(const Vec& cost, bool forbid_artificials) {
    // reduced-cost row from the current basis
    Vec z(cols_total() + 1, 0.0);
    for (int j = 0; j <= cols_total(); ++j) {
      double s = (j < static_cast<int>(cost.size())) ? -cost[j] : 0.0;
      for (int i = 0; i < m_; ++i) {
        const double cb = basis_[i] < static_cast<int>(cost.size()) ? cost[basis_[i]] : 0.0;
        s += cb * t_[i][j];
      }
      z[j] = -s;
    }
    // z[j] now holds cost_j - c_B B^-1 A_j (to be driven nonnegative)

    int degenerate_steps = 0;
    bool bland = false;
    for (long iter = 0;; ++iter) {
      if (iter > 50000L * (m_ + 1)) bland = true;  // hard safety net

      int enter = -1;
      double best = -tol_;
      for (int j = 0; j < cols_total(); ++j) {
        if (forbid_artificials && j >= n_) continue;
        if (z[j] < (bland ? -tol_ : best)) {
          enter = j;
          if (bland) break;
          best = z[j];
        }
      }
      if (enter < 0) return Status::Optimal;

      int leave = -1;
      double best_ratio = kInf;
      for (int i = 0; i < m_; ++i) {
        if (t_[i][enter] > tol_) {
          const double ratio = t_[i].back() / t_[i][enter];
          if (ratio < best_ratio - tol_ ||
              (ratio < best_ratio + tol_ && (leave < 0 || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return Status::Unbounded;
      if (best_ratio < tol_) {
        if (++degenerate_steps > 40) bland = true;  // anti-cycling
      } else {
        degenerate_steps = 0;
      }
      pivot(leave, enter, z);
    }
  }

  void pivot(int row, int col, Vec& z) {
    const double p = t_[row][col];
    for (double& v : t_[row]) v /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_total(); ++j) t_[i][j] -= f * t_[row][j];
    }
    const double fz = z[col];
    if (fz != 0.0)
      for (int j = 0; j <= cols_total(); ++j) z[j] -= fz * t_[row][j];
    basis_[row] = col;
  }

  /// Pivots artificials out of the basis after phase 1 where possible.
  void clear_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j)
        if (std::abs(t_[i][j]) > 1e2 * tol_) {
          col = j;
          break;
        }
      if (col >= 0) {
        Vec dummy(cols_total() + 1, 0.0);
        pivot(i, col, dummy);
      }
    }
  }

  double value(int col) const {
    for (int i = 0; i < m_; ++i)
      if (basis_[i] == col) return t_[i].back();
    return 0.0;
  }

  double phase_objective(const Vec& cost) const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double cb = basis_[i] < static_cast<int>(cost.size()) ? cost[basis_[i]] : 0.0;
      s += cb * t_[i].back();
    }
    return s;
  }

  /// Equality-row duals via the artificial columns: B^-1 under column n_+i.
  Vec duals(const Vec& cost) const {
    Vec y(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      double s = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double cb = basis_[r] < static_cast<int>(cost.size()) ? cost[basis_[r]] : 0.0;
        s += cb * t_[r][n_ + i];
      }
      y[i] = s;
    }
    return y;
  }

private:
  int m_, n_;
  double tol_;
  Vec b_;
  std::vector<Vec> t_;
  std::vector<int> basis_;
};

struct StandardForm {
  std::vector<Vec> cols;
  Vec b;
  Vec cost;
  std::vector<double> row_sign;  // +1, or -1 for rows negated to get b >= 0
};

StandardForm to_standard(const Vec& c, const std::vector<Constraint>& rows) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());
  StandardForm sf;
  sf.b.resize(m);
  sf.row_sign.assign(m, 1.0);
  for (int i = 0; i < m; ++i) {
    sf.row_sign[i] = rows[i].b >= 0.0 ? 1.0 : -1.0;
    sf.b[i] = rows[i].b * sf.row_sign[i];
  }
  // columns: x = u - v (2n structural), then one slack per row
  sf.cols.assign(2 * n + m, Vec(m, 0.0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) {
      const double a = rows[i].a[j] * sf.row_sign[i];
      sf.cols[j][i] = a;
      sf.cols[n + j][i] = -a;
    }
  for (int i = 0; i < m; ++i) sf.cols[2 * n + i][i] = sf.row_sign[i];
  sf.cost.assign(2 * n + m, 0.0);
  for (int j = 0; j < n; ++j) {
    sf.cost[j] = c[j];
    sf.cost[n + j] = -c[j];
  }
  return sf;
}

}  // namespace

Solution solve_lp(const Vec& c, const std::vector<Constraint>& rows, double tol) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());
  for (const Constraint& r : rows)
    if (static_cast<int>(r.a.size()) != n)
      throw UsageError("solve_lp: constraint dimension does not match the cost vector");

  Solution sol;
  if (m == 0) {
    // no constraints: bounded only for c = 0
    if (norm2(c) <= tol) {
      sol.status = Status::Optimal;
      sol.x.assign(n, 0.0);
      sol.objective = 0.0;
      return sol;
    }
    sol.status = Status::Unbounded;
    return sol;
  }

  const StandardForm sf = to_standard(c, rows);
  Tableau tab(sf.cols, sf.b, tol);

  // seed the basis with well-formed slack columns to shrink phase 1
  for (int i = 0; i < m; ++i)
    if (sf.row_sign[i] > 0.0) tab.try_seed_basis(i, 2 * n + i);

  Vec phase1_cost(sf.cols.size(), 0.0);  // artificials cost 1 (beyond structural columns)
  {
    Vec full(sf.cols.size() + m, 0.0);
    for (int i = 0; i < m; ++i) full[sf.cols.size() + i] = 1.0;
    if (tab.run_phase(full, false) != Status::Optimal)
      throw UsageError("solve_lp: phase 1 unbounded (internal inconsistency)");
    if (tab.phase_objective(full) > 1e3 * tol) {
      sol.status = Status::Infeasible;
      return sol;
    }
    tab.clear_artificials();
  }

  const Status st = tab.run_phase(sf.cost, true);
  if (st == Status::Unbounded) {
    sol.status = Status::Unbounded;
    return sol;
  }

  sol.status = Status::Optimal;
  sol.x.resize(n);
  for (int j = 0; j < n; ++j) sol.x[j] = tab.value(j) - tab.value(n + j);
  sol.objective = dot(c, sol.x);

  const Vec y = tab.duals(sf.cost);
  sol.multipliers.resize(m);
  for (int i = 0; i < m; ++i) sol.multipliers[i] = std::max(0.0, -y[i] * sf.row_sign[i]);

  const double act_tol = 1e-8;
  for (int i = 0; i < m; ++i) {
    const double resid = dot(rows[i].a, sol.x) - rows[i].b;
    if (std::abs(resid) <= act_tol * (1.0 + std::abs(rows[i].b))) sol.active.push_back(i);
  }
  return sol;
}

double cone_residual(const std::vector<Vec>& generators, const Vec& target, double tol) {
  const int n = static_cast<int>(target.size());
  if (generators.empty()) return norm_inf(target);

  // phase-1 feasibility for sum gamma_j g_j = target, gamma >= 0: minimize the
  // total artificial mass, which bounds the max-norm residual
  const int k = static_cast<int>(generators.size());
  std::vector<Vec> cols(k, Vec(n, 0.0));
  Vec b(n);
  std::vector<double> sign(n, 1.0);
  for (int i = 0; i < n; ++i) {
    sign[i] = target[i] >= 0.0 ? 1.0 : -1.0;
    b[i] = target[i] * sign[i];
  }
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) cols[j][i] = generators[j][i] * sign[i];

  Tableau tab(cols, b, tol);
  Vec full(k + n, 0.0);
  for (int i = 0; i < n; ++i) full[k + i] = 1.0;
  if (tab.run_phase(full, false) != Status::Optimal) return kInf;
  return std::max(0.0, tab.phase_objective(full));
}

}  // namespace holderreg::lp
