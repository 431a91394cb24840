#pragma once

#include <Eigen/Dense>
#include <iosfwd>

namespace oslr {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

/// min c.x  subject to  A x <= b,  x free.
struct LpStandardForm {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;

  int vars() const { return static_cast<int>(c.size()); }
  int rows() const { return static_cast<int>(b.size()); }
};

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  long iterations = 0;
};

struct SimplexOptions {
  double feas_tol = 1e-8;
  long max_iters = 0;  // 0 -> 50 * rows
};

/// Dense two-phase simplex. Free variables are split internally; pivoting
/// uses the most-negative-reduced-cost rule with Bland's rule engaged after
/// a degenerate stall, so runs are deterministic and cannot cycle.
LpSolution solve_lp(const LpStandardForm& lp, const SimplexOptions& opts = {});

/// Plain-text listing for external cross-checks: the objective row first,
/// then one constraint row per line ("a_1 ... a_n <= b"), space-separated.
void dump_lp(const LpStandardForm& lp, std::ostream& os);

}  // namespace oslr
