#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "oslr/sampling.hpp"

namespace oslr {

/// Inclusion-probability accessor used by the Horvitz-Thompson estimators.
class InclusionLaw {
 public:
  virtual ~InclusionLaw() = default;
  virtual int dim() const = 0;
  virtual double single(int i) const = 0;
  virtual double pair(int i, int j) const = 0;  // i != j
};

/// Law of the exploration sampler: first index from q, rest uniform.
class SamplingLaw final : public InclusionLaw {
 public:
  SamplingLaw(SamplingWeights q, int k) : q_(std::move(q)), k_(k) {}
  int dim() const override { return q_.dim(); }
  double single(int i) const override { return p_single(q_, k_, i); }
  double pair(int i, int j) const override { return p_pair(q_, k_, i, j); }

 private:
  SamplingWeights q_;
  int k_;
};

/// Law of the augmented observation set B = B' u S_prev: the k indices of
/// S_prev are observed deterministically, B' is sampled over the d' = d-k
/// complement. A pair with exactly one deterministic index has the inclusion
/// probability of its random index; the two events are independent.
class AugmentedLaw final : public InclusionLaw {
 public:
  AugmentedLaw(const std::vector<int>& fixed_set, SamplingWeights complement_q, int k0, int d);
  int dim() const override { return d_; }
  double single(int i) const override;
  double pair(int i, int j) const override;

 private:
  int d_ = 0;
  int k0_ = 0;
  SamplingWeights qbar_;
  std::vector<int> pos_;  // global index -> position in complement, or -1 if fixed
};

AugmentedLaw poslr_law(const std::vector<int>& s_prev, const SamplingWeights& qbar, int k0, int d);

/// x_hat_i = x_i / P[i in B] on observed coordinates, zero elsewhere.
/// x_on_b holds the observed values aligned with B.indices.
Eigen::VectorXd estimate_instance(const std::vector<double>& x_on_b, const FeatureSet& b,
                                  const InclusionLaw& law);

/// h[i,j] = x_i x_j / P[i,j in B] on observed pairs (diagonal uses the
/// single-inclusion probability), zero elsewhere. Symmetric by construction.
Eigen::MatrixXd estimate_outer(const std::vector<double>& x_on_b, const FeatureSet& b,
                               const InclusionLaw& law);

/// Running sums feeding the selector: b = sum x_hat * y, H = sum h.
struct SelectorAccumulators {
  Eigen::VectorXd b;
  Eigen::MatrixXd H;
  long s = 0;

  explicit SelectorAccumulators(int d)
      : b(Eigen::VectorXd::Zero(d)), H(Eigen::MatrixXd::Zero(d, d)) {}

  void add(const Eigen::VectorXd& xhat, const Eigen::MatrixXd& h, double y) {
    b.noalias() += xhat * y;
    H.noalias() += h;
    ++s;
  }
};

}  // namespace oslr
