#include "oslr/ons.hpp"

#include <cmath>
#include <stdexcept>

namespace oslr {

void rank_one_inverse_update(Eigen::MatrixXd& A_inv, const Eigen::VectorXd& g, double rho) {
  const Eigen::VectorXd Ag = A_inv * g;
  const double denom = 1.0 + rho * g.dot(Ag);
  A_inv.noalias() -= (rho / denom) * (Ag * Ag.transpose());
}

Eigen::VectorXd project_onto_band(const Eigen::VectorXd& w, const Eigen::VectorXd& x,
                                  const Eigen::MatrixXd& A_inv) {
  const double u = w.dot(x);
  const double mag = std::abs(u) - 1.0;
  if (mag <= 0.0) return w;
  const double tau = u > 0.0 ? mag : -mag;
  const Eigen::VectorXd Ax = A_inv * x;
  const double denom = x.dot(Ax);
  if (denom <= 0.0) return w;  // x = 0: the band constraint is vacuous
  return w - (tau / denom) * Ax;
}

OnsEpoch OnsEpoch::start(const Eigen::VectorXd& w_hat_full, const std::vector<int>& support,
                         const OnsEpoch* prev, const std::vector<int>& support_prev, double rho,
                         double epsilon) {
  const int k = static_cast<int>(support.size());
  if (k == 0) throw std::invalid_argument("OnsEpoch: empty support");

  if (prev != nullptr && support == support_prev) return *prev;

  OnsEpoch e;
  e.support_ = support;
  e.rho_ = rho;
  e.epsilon_ = epsilon;
  e.w_tilde_.resize(k);
  for (int a = 0; a < k; ++a) {
    const int i = support[a];
    if (i < 0 || i >= w_hat_full.size()) throw std::invalid_argument("OnsEpoch: support index out of range");
    e.w_tilde_[a] = w_hat_full[i];
  }
  e.w_bar_ = e.w_tilde_;
  e.A_ = epsilon * Eigen::MatrixXd::Identity(k, k);
  e.A_inv_ = (1.0 / epsilon) * Eigen::MatrixXd::Identity(k, k);
  return e;
}

double OnsEpoch::step(const Eigen::VectorXd& x_on_support, double y) {
  if (x_on_support.size() != static_cast<long>(support_.size()))
    throw std::invalid_argument("OnsEpoch::step: x dimension mismatch");

  w_bar_ = project_onto_band(w_tilde_, x_on_support, A_inv_);
  const double yhat = w_bar_.dot(x_on_support);
  diag.band_max = std::max(diag.band_max, std::abs(yhat));

  const Eigen::VectorXd g = 2.0 * (yhat - y) * x_on_support;
  A_.noalias() += rho_ * (g * g.transpose());
  rank_one_inverse_update(A_inv_, g, rho_);
  w_tilde_ = w_bar_ - A_inv_ * g;

  ++steps_;
  if (steps_ % kRefreshPeriod == 0) {
    const Eigen::MatrixXd direct = A_.inverse();
    diag.refresh_drift_max =
        std::max(diag.refresh_drift_max, (A_inv_ - direct).cwiseAbs().maxCoeff());
    A_inv_ = direct;
  }
  const double inv_err =
      (A_ * A_inv_ - Eigen::MatrixXd::Identity(A_.rows(), A_.cols())).cwiseAbs().maxCoeff();
  diag.inv_err_max = std::max(diag.inv_err_max, inv_err);
  return yhat;
}

}  // namespace oslr
