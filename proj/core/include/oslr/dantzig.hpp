#pragma once

#include <Eigen/Dense>

#include "oslr/simplex.hpp"

namespace oslr {

/// min ||w||_1  subject to  ||bbar - Mbar w||_inf <= gamma.
struct DantzigProblem {
  Eigen::VectorXd bbar;
  Eigen::MatrixXd Mbar;
  double gamma = 0.0;

  DantzigProblem(Eigen::VectorXd bbar_, Eigen::MatrixXd Mbar_, double gamma_);
  int dim() const { return static_cast<int>(bbar.size()); }
};

/// LP recast over x = [w; u]: minimize sum u_i subject to
///   w - u <= 0,  -w - u <= 0,  Mbar w <= gamma + bbar,  -Mbar w <= gamma - bbar.
/// 2d variables, 4d rows; at any optimum u_i = |w_i|.
LpStandardForm build_lp(const DantzigProblem& p);

struct DantzigOptions {
  double feas_tol = 1e-8;
  long max_iters = 0;
};

struct DantzigSolution {
  LpStatus status = LpStatus::IterationLimit;
  Eigen::VectorXd w;
  double objective = 0.0;      // ||w||_1 at the optimum
  double residual_inf = 0.0;   // ||bbar - Mbar w||_inf, recomputed from w
  long iterations = 0;

  bool ok() const { return status == LpStatus::Optimal; }
};

/// Solves DS(gamma). The residual bound is re-checked from the returned w,
/// independently of the solver; a violation throws.
DantzigSolution solve_dantzig(const DantzigProblem& p, const DantzigOptions& opts = {});

/// Identity-design closed form: w_i = sign(b_i) * max(|b_i| - gamma, 0).
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& bbar, double gamma);

}  // namespace oslr
