#include "oslr/dantzig.hpp"

#include <stdexcept>

namespace oslr {

DantzigProblem::DantzigProblem(Eigen::VectorXd bbar_, Eigen::MatrixXd Mbar_, double gamma_)
    : bbar(std::move(bbar_)), Mbar(std::move(Mbar_)), gamma(gamma_) {
  if (gamma < 0.0) throw std::invalid_argument("DantzigProblem: gamma must be nonnegative");
  if (Mbar.rows() != bbar.size() || Mbar.cols() != bbar.size())
    throw std::invalid_argument("DantzigProblem: Mbar must be d x d matching bbar");
}

LpStandardForm build_lp(const DantzigProblem& p) {
  const int d = p.dim();
  LpStandardForm lp;
  lp.c = Eigen::VectorXd::Zero(2 * d);
  lp.c.tail(d).setOnes();
  lp.A = Eigen::MatrixXd::Zero(4 * d, 2 * d);
  lp.b = Eigen::VectorXd::Zero(4 * d);

  for (int i = 0; i < d; ++i) {
    lp.A(2 * i, i) = 1.0;        //  w_i - u_i <= 0
    lp.A(2 * i, d + i) = -1.0;
    lp.A(2 * i + 1, i) = -1.0;   // -w_i - u_i <= 0
    lp.A(2 * i + 1, d + i) = -1.0;
  }
  lp.A.block(2 * d, 0, d, d) = p.Mbar;
  lp.A.block(3 * d, 0, d, d) = -p.Mbar;
  lp.b.segment(2 * d, d) = Eigen::VectorXd::Constant(d, p.gamma) + p.bbar;
  lp.b.segment(3 * d, d) = Eigen::VectorXd::Constant(d, p.gamma) - p.bbar;
  return lp;
}

DantzigSolution solve_dantzig(const DantzigProblem& p, const DantzigOptions& opts) {
  const LpStandardForm lp = build_lp(p);
  SimplexOptions sopts;
  sopts.feas_tol = opts.feas_tol;
  sopts.max_iters = opts.max_iters;
  const LpSolution raw = solve_lp(lp, sopts);

  DantzigSolution sol;
  sol.status = raw.status;
  sol.iterations = raw.iterations;
  if (raw.status != LpStatus::Optimal) return sol;

  sol.w = raw.x.head(p.dim());
  sol.objective = raw.objective;
  sol.residual_inf = (p.bbar - p.Mbar * sol.w).cwiseAbs().maxCoeff();
  if (sol.residual_inf > p.gamma + opts.feas_tol)
    throw std::runtime_error("solve_dantzig: solver returned an infeasible optimum");
  return sol;
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& bbar, double gamma) {
  Eigen::VectorXd w(bbar.size());
  for (int i = 0; i < bbar.size(); ++i) {
    const double mag = std::abs(bbar[i]) - gamma;
    w[i] = mag > 0.0 ? (bbar[i] > 0.0 ? mag : -mag) : 0.0;
  }
  return w;
}

}  // namespace oslr
