#include "oslr/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace oslr {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "?";
}

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;    // ratio-test eligibility; smaller pivots amplify roundoff
constexpr double kDropTol = 1e-11;    // treat entries below this as structural zeros
constexpr int kBlandAfter = 64;  // consecutive degenerate pivots before Bland's rule

class Tableau {
 public:
  Tableau(const LpStandardForm& lp, double feas_tol) : feas_tol_(feas_tol) {
    n_ = lp.vars();
    m_ = lp.rows();
    nsplit_ = 2 * n_;

    // Rows with negative rhs get negated and receive an artificial column.
    std::vector<int> art_rows;
    for (int i = 0; i < m_; ++i)
      if (lp.b[i] < 0.0) art_rows.push_back(i);
    na_ = static_cast<int>(art_rows.size());
    art_start_ = nsplit_ + m_;
    ncols_ = nsplit_ + m_ + na_;
    rhs_ = ncols_;
    stride_ = ncols_ + 1;

    t_.assign(static_cast<size_t>(m_ + 1) * stride_, 0.0);
    basis_.assign(m_, -1);
    active_.assign(m_, true);
    allowed_.assign(ncols_, true);

    for (int i = 0; i < m_; ++i) {
      const double sgn = lp.b[i] < 0.0 ? -1.0 : 1.0;
      double* row = row_ptr(i);
      for (int j = 0; j < n_; ++j) {
        const double a = sgn * lp.A(i, j);
        row[2 * j] = a;
        row[2 * j + 1] = -a;
      }
      row[nsplit_ + i] = sgn;  // slack
      row[rhs_] = sgn * lp.b[i];
      basis_[i] = nsplit_ + i;
    }
    for (int a = 0; a < na_; ++a) {
      const int i = art_rows[a];
      row_ptr(i)[art_start_ + a] = 1.0;
      basis_[i] = art_start_ + a;
    }

    costs_.assign(ncols_, 0.0);
    for (int j = 0; j < n_; ++j) {
      costs_[2 * j] = lp.c[j];
      costs_[2 * j + 1] = -lp.c[j];
    }
  }

  bool needs_phase1() const { return na_ > 0; }

  // Phase-1 reduced costs: minimize the sum of artificials.
  void load_phase1_costs() {
    double* obj = row_ptr(m_);
    std::fill(obj, obj + stride_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art_start_) continue;
      const double* row = row_ptr(i);
      for (int j = 0; j <= ncols_; ++j) obj[j] -= row[j];
    }
    for (int a = 0; a < na_; ++a) obj[art_start_ + a] += 1.0;
  }

  // Phase-2 reduced costs: original objective priced out against the basis.
  void load_phase2_costs() {
    for (int a = 0; a < na_; ++a) allowed_[art_start_ + a] = false;
    double* obj = row_ptr(m_);
    std::fill(obj, obj + stride_, 0.0);
    for (int j = 0; j < ncols_; ++j) obj[j] = costs_[j];
    for (int i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const double cb = obj[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = row_ptr(i);
      for (int j = 0; j <= ncols_; ++j) obj[j] -= cb * row[j];
    }
  }

  double phase_objective() const { return -t_[static_cast<size_t>(m_) * stride_ + rhs_]; }

  // Runs the pivot loop until optimality of the loaded cost row.
  // Returns Optimal/Unbounded/IterationLimit.
  LpStatus iterate(long max_iters, long& iters) {
    int stall = 0;
    bool bland = false;
    double last_obj = phase_objective();
    while (true) {
      const int enter = choose_entering(bland);
      if (enter < 0) return LpStatus::Optimal;
      const int leave = choose_leaving(enter, bland);
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
      if (++iters >= max_iters) return LpStatus::IterationLimit;

      const double obj = phase_objective();
      if (obj < last_obj - 1e-13 * (1.0 + std::abs(last_obj))) {
        stall = 0;
        bland = false;
      } else if (++stall >= kBlandAfter) {
        bland = true;
      }
      last_obj = obj;
    }
  }

  // After phase 1: drive artificials out of the basis, or retire their rows.
  // The pivot with the largest magnitude keeps the exchange well-conditioned.
  void clear_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!active_[i] || basis_[i] < art_start_) continue;
      const double* row = row_ptr(i);
      int piv = -1;
      double piv_mag = kDropTol;
      for (int j = 0; j < art_start_; ++j) {
        if (std::abs(row[j]) > piv_mag) {
          piv_mag = std::abs(row[j]);
          piv = j;
        }
      }
      if (piv >= 0) {
        pivot(i, piv);
      } else {
        active_[i] = false;  // redundant row, rhs already ~0
      }
    }
  }

  Eigen::VectorXd extract(int nvars) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(nvars);
    for (int i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const int col = basis_[i];
      if (col >= nsplit_) continue;
      const double v = t_[static_cast<size_t>(i) * stride_ + rhs_];
      if (col % 2 == 0)
        x[col / 2] += v;
      else
        x[col / 2] -= v;
    }
    return x;
  }

 private:
  double* row_ptr(int i) { return t_.data() + static_cast<size_t>(i) * stride_; }
  const double* row_ptr(int i) const { return t_.data() + static_cast<size_t>(i) * stride_; }

  int choose_entering(bool bland) const {
    const double* obj = row_ptr(m_);
    if (bland) {
      for (int j = 0; j < ncols_; ++j)
        if (allowed_[j] && obj[j] < -kReducedCostTol) return j;
      return -1;
    }
    int best = -1;
    double best_val = -kReducedCostTol;
    for (int j = 0; j < ncols_; ++j) {
      if (allowed_[j] && obj[j] < best_val) {
        best_val = obj[j];
        best = j;
      }
    }
    return best;
  }

  // Smallest ratio wins. Ties go to the largest pivot element for stability,
  // except in Bland mode where the smallest basis index preserves the
  // anti-cycling guarantee.
  int choose_leaving(int enter, bool bland) const {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    int best_basis = std::numeric_limits<int>::max();
    for (int i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const double* row = row_ptr(i);
      const double a = row[enter];
      if (a <= kPivotTol) continue;
      const double ratio = std::max(row[rhs_], 0.0) / a;
      bool take = false;
      if (ratio < best_ratio - 1e-12) {
        take = true;
      } else if (ratio < best_ratio + 1e-12) {
        take = bland ? basis_[i] < best_basis : a > best_pivot;
      }
      if (take) {
        best_ratio = std::min(ratio, best_ratio);
        best = i;
        best_pivot = a;
        best_basis = basis_[i];
      }
    }
    return best;
  }

  void pivot(int prow, int pcol) {
    double* prp = row_ptr(prow);
    const double inv = 1.0 / prp[pcol];
    for (int j = 0; j <= ncols_; ++j) prp[j] *= inv;
    prp[pcol] = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == prow || (i < m_ && !active_[i])) continue;
      double* rp = row_ptr(i);
      const double f = rp[pcol];
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols_; ++j) rp[j] -= f * prp[j];
      rp[pcol] = 0.0;
    }
    basis_[prow] = pcol;
  }

  int n_ = 0, m_ = 0, nsplit_ = 0, na_ = 0;
  int art_start_ = 0, ncols_ = 0, rhs_ = 0, stride_ = 0;
  double feas_tol_ = 1e-8;
  std::vector<double> t_;
  std::vector<double> costs_;
  std::vector<int> basis_;
  std::vector<bool> active_;
  std::vector<bool> allowed_;
};

}  // namespace

LpSolution solve_lp(const LpStandardForm& lp, const SimplexOptions& opts) {
  if (lp.A.rows() != lp.b.size() || lp.A.cols() != lp.c.size())
    throw std::invalid_argument("solve_lp: inconsistent dimensions");
  if (!lp.A.allFinite() || !lp.b.allFinite() || !lp.c.allFinite())
    throw std::invalid_argument("solve_lp: non-finite input");

  const long max_iters = opts.max_iters > 0 ? opts.max_iters : 50L * std::max(1, lp.rows());
  LpSolution sol;
  Tableau tab(lp, opts.feas_tol);
  long iters = 0;

  if (tab.needs_phase1()) {
    tab.load_phase1_costs();
    const LpStatus st = tab.iterate(max_iters, iters);
    if (st == LpStatus::IterationLimit) {
      sol.status = st;
      sol.iterations = iters;
      return sol;
    }
    // Phase 1 is bounded below by zero, so Unbounded here means numerical
    // breakdown; surface it as an iteration-limit failure rather than lying.
    if (st == LpStatus::Unbounded) {
      sol.status = LpStatus::IterationLimit;
      sol.iterations = iters;
      return sol;
    }
    if (tab.phase_objective() > opts.feas_tol) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = iters;
      return sol;
    }
    tab.clear_artificials();
  }

  tab.load_phase2_costs();
  const LpStatus st = tab.iterate(max_iters, iters);
  sol.status = st;
  sol.iterations = iters;
  if (st == LpStatus::Optimal) {
    sol.x = tab.extract(lp.vars());
    sol.objective = lp.c.dot(sol.x);
    // Verify against the original data; a tableau that drifted past the
    // feasibility tolerance must not report success.
    const double violation = (lp.A * sol.x - lp.b).maxCoeff();
    if (violation > opts.feas_tol) sol.status = LpStatus::IterationLimit;
  }
  return sol;
}

void dump_lp(const LpStandardForm& lp, std::ostream& os) {
  os.precision(17);
  for (int j = 0; j < lp.vars(); ++j) os << (j ? " " : "") << lp.c[j];
  os << "\n";
  for (int i = 0; i < lp.rows(); ++i) {
    for (int j = 0; j < lp.vars(); ++j) os << lp.A(i, j) << " ";
    os << "<= " << lp.b[i] << "\n";
  }
}

}  // namespace oslr
