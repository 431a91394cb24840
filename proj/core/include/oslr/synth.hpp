#pragma once

#include <Eigen/Dense>
#include <vector>

#include "oslr/rng.hpp"

namespace oslr {

/// Hidden regressor of a realizable stream: k-sparse, ||w*||_1 <= 1, every
/// support magnitude at least h_min.
struct GroundTruth {
  Eigen::VectorXd w_star;
  std::vector<int> support;  // sorted
  double sigma = 0.0;
  double h_min = 0.0;

  int dim() const { return static_cast<int>(w_star.size()); }
};

enum class DesignKind { Rademacher, UniformBox, CorrelatedGaussianClipped };

/// CorrelatedGaussianClipped draws an AR(1) chain across coordinates with
/// marginal sd 0.5 and clips to [-1, 1]; the result is bounded, not Gaussian.
struct DesignSpec {
  DesignKind kind = DesignKind::Rademacher;
  double rho_x = 0.0;
};

struct Round {
  Eigen::VectorXd x;
  double y = 0.0;
};

/// Support uniform among k-subsets, magnitudes uniform in [h_min, 1/k],
/// random signs. Requires k * h_min <= 1.
GroundTruth gen_ground_truth(int d, int k, double h_min, double sigma, Rng& rng);

Round gen_round(const GroundTruth& gt, const DesignSpec& design, Rng& rng);

/// Sequential source of (x_t, y_t) rounds.
class Stream {
 public:
  virtual ~Stream() = default;
  virtual Round next() = 0;
};

/// Lazy realizable stream owning its random source.
class SynthStream final : public Stream {
 public:
  SynthStream(GroundTruth gt, DesignSpec design, std::uint64_t seed)
      : gt_(std::move(gt)), design_(design), rng_(seed) {}
  Round next() override { return gen_round(gt_, design_, rng_); }
  const GroundTruth& gt() const { return gt_; }

 private:
  GroundTruth gt_;
  DesignSpec design_;
  Rng rng_;
};

/// Heuristic upper bound on the compatibility constant
///   delta_S^2 = min over {w != 0, ||w(S^c)||_1 <= alpha ||w(S)||_1}
///               of |S| ||X^T w||_2^2 / (n ||w(S)||_1^2)
/// via multi-start projected subgradient descent. Returns the smallest
/// quotient found over every feasible iterate evaluated.
double estimate_compatibility(const Eigen::MatrixXd& X, const std::vector<int>& S, double alpha,
                              Rng& rng, int restarts = 64, int iters = 400);

/// Exact best k-sparse least-squares regressor by support enumeration.
/// X is d x n, Y is n. Requires d <= 12.
Eigen::VectorXd best_k_sparse(const Eigen::MatrixXd& X, const Eigen::VectorXd& Y, int k);

struct L1Errors {
  double on_support = 0.0;  // ||Delta(S)||_1
  double full_l1 = 0.0;     // ||Delta||_1
  double full_l2 = 0.0;     // ||Delta||_2
};

L1Errors l1_errors(const Eigen::VectorXd& w_hat, const GroundTruth& gt);

}  // namespace oslr
