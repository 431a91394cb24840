#pragma once

#include <Eigen/Dense>
#include <vector>

#include "oslr/rng.hpp"

namespace oslr {

/// Normalized sampling distribution over [d] attributes.
struct SamplingWeights {
  Eigen::VectorXd q;

  int dim() const { return static_cast<int>(q.size()); }
};

/// The attribute indices observed in one exploration round (0-based, sorted).
struct FeatureSet {
  std::vector<int> indices;
  int budget = 0;
};

/// q_i = |w_i| / ||w||_1. A zero vector falls back to the uniform
/// distribution so the sampler stays total.
SamplingWeights normalize_weights(const Eigen::VectorXd& w);

/// Draw the first index from q, then k-1 indices uniformly without
/// replacement from the rest. Throws std::invalid_argument unless 1 <= k <= d.
FeatureSet sample_feature_set(const SamplingWeights& q, int k, Rng& rng);

/// Closed-form inclusion probability P[i in B] for the sampler above.
double p_single(const SamplingWeights& q, int k, int i);

/// P[i, j in B], i != j. Symmetric. Throws on i == j.
double p_pair(const SamplingWeights& q, int k, int i, int j);

/// P[i, j, r in B], pairwise distinct. Symmetric under permutations.
double p_triple(const SamplingWeights& q, int k, int i, int j, int r);

/// Exact inclusion-probability tables obtained by walking every ordered
/// draw sequence of the sampler. Test oracle; requires d <= 8.
struct InclusionTables {
  Eigen::VectorXd single;              // d
  Eigen::MatrixXd pair;                // d x d, diagonal = single
  std::vector<double> triple;          // d^3 flat, t[(i*d+j)*d+r]
  int d = 0;

  double trip(int i, int j, int r) const { return triple[(static_cast<size_t>(i) * d + j) * d + r]; }
};

InclusionTables enumerate_distribution(const SamplingWeights& q, int k);

}  // namespace oslr
