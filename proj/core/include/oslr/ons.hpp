#pragma once

#include <Eigen/Dense>
#include <vector>

namespace oslr {

struct OnsDiagnostics {
  double band_max = 0.0;       // max |<w_bar, x>| seen after projection
  double inv_err_max = 0.0;    // max ||A A_inv - I||_max after a step
  double refresh_drift_max = 0.0;  // max drift found at periodic re-inversions
};

/// A_inv' = A_inv - (rho A_inv g g^T A_inv) / (1 + rho g^T A_inv g).
void rank_one_inverse_update(Eigen::MatrixXd& A_inv, const Eigen::VectorXd& g, double rho);

/// Generalized projection onto {w : |<w, x>| <= 1} in the A-norm:
/// P(w) = w - tau(<w,x>) / <x, A_inv x> * A_inv x with
/// tau(u) = sign(u) max(|u|-1, 0). x = 0 returns w unchanged.
Eigen::VectorXd project_onto_band(const Eigen::VectorXd& w, const Eigen::VectorXd& x,
                                  const Eigen::MatrixXd& A_inv);

/// Projected Online Newton Step on a fixed support within one exploitation
/// epoch. Holds the pre-projection iterate, the curvature matrix and its
/// Sherman-Morrison-maintained inverse.
class OnsEpoch {
 public:
  /// Epoch entry per the carryover rule: when the support is unchanged the
  /// previous epoch's iterate and curvature continue; otherwise the state is
  /// re-seeded from w_hat restricted to the new support with A = eps*I.
  static OnsEpoch start(const Eigen::VectorXd& w_hat_full, const std::vector<int>& support,
                        const OnsEpoch* prev, const std::vector<int>& support_prev, double rho,
                        double epsilon);

  /// One exploitation round: project, predict, and apply the Newton update.
  /// x_on_support holds x_t restricted to the epoch support (same order).
  double step(const Eigen::VectorXd& x_on_support, double y);

  const std::vector<int>& support() const { return support_; }
  const Eigen::VectorXd& w_tilde() const { return w_tilde_; }
  const Eigen::VectorXd& w_bar() const { return w_bar_; }
  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::MatrixXd& A_inv() const { return A_inv_; }

  OnsDiagnostics diag;

 private:
  OnsEpoch() = default;

  std::vector<int> support_;
  Eigen::VectorXd w_tilde_, w_bar_;
  Eigen::MatrixXd A_, A_inv_;
  double rho_ = 0.0;
  double epsilon_ = 0.0;
  long steps_ = 0;

  static constexpr long kRefreshPeriod = 10000;
};

}  // namespace oslr
