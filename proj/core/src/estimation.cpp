#include "oslr/estimation.hpp"

#include <algorithm>
#include <stdexcept>

namespace oslr {

AugmentedLaw::AugmentedLaw(const std::vector<int>& fixed_set, SamplingWeights complement_q, int k0,
                           int d)
    : d_(d), k0_(k0), qbar_(std::move(complement_q)) {
  const int dp = d - static_cast<int>(fixed_set.size());
  if (qbar_.dim() != dp)
    throw std::invalid_argument("AugmentedLaw: complement weights must have length d - |fixed|");
  if (k0 < 1 || k0 > dp) throw std::invalid_argument("AugmentedLaw: budget k0 out of [1, d']");
  pos_.assign(d, -1);
  std::vector<bool> fixed(d, false);
  for (int i : fixed_set) {
    if (i < 0 || i >= d) throw std::out_of_range("AugmentedLaw: fixed index out of range");
    fixed[i] = true;
  }
  int p = 0;
  for (int i = 0; i < d; ++i)
    if (!fixed[i]) pos_[i] = p++;
}

double AugmentedLaw::single(int i) const {
  if (i < 0 || i >= d_) throw std::out_of_range("AugmentedLaw::single");
  if (pos_[i] < 0) return 1.0;
  return p_single(qbar_, k0_, pos_[i]);
}

double AugmentedLaw::pair(int i, int j) const {
  if (i < 0 || i >= d_ || j < 0 || j >= d_) throw std::out_of_range("AugmentedLaw::pair");
  if (i == j) throw std::invalid_argument("AugmentedLaw::pair: indices must differ");
  const bool fi = pos_[i] < 0, fj = pos_[j] < 0;
  if (fi && fj) return 1.0;
  if (fi) return p_single(qbar_, k0_, pos_[j]);
  if (fj) return p_single(qbar_, k0_, pos_[i]);
  return p_pair(qbar_, k0_, pos_[i], pos_[j]);
}

AugmentedLaw poslr_law(const std::vector<int>& s_prev, const SamplingWeights& qbar, int k0, int d) {
  return AugmentedLaw(s_prev, qbar, k0, d);
}

Eigen::VectorXd estimate_instance(const std::vector<double>& x_on_b, const FeatureSet& b,
                                  const InclusionLaw& law) {
  if (x_on_b.size() != b.indices.size())
    throw std::invalid_argument("estimate_instance: value/index count mismatch");
  Eigen::VectorXd xhat = Eigen::VectorXd::Zero(law.dim());
  for (size_t a = 0; a < b.indices.size(); ++a) {
    const int i = b.indices[a];
    const double p = law.single(i);
    if (p <= 0.0) throw std::runtime_error("estimate_instance: zero inclusion probability");
    xhat[i] = x_on_b[a] / p;
  }
  return xhat;
}

Eigen::MatrixXd estimate_outer(const std::vector<double>& x_on_b, const FeatureSet& b,
                               const InclusionLaw& law) {
  if (x_on_b.size() != b.indices.size())
    throw std::invalid_argument("estimate_outer: value/index count mismatch");
  const int d = law.dim();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  const size_t m = b.indices.size();
  for (size_t a = 0; a < m; ++a) {
    const int i = b.indices[a];
    const double pd = law.single(i);
    if (pd <= 0.0) throw std::runtime_error("estimate_outer: zero inclusion probability");
    h(i, i) = x_on_b[a] * x_on_b[a] / pd;
    for (size_t c = a + 1; c < m; ++c) {
      const int j = b.indices[c];
      const double pp = law.pair(i, j);
      if (pp <= 0.0) throw std::runtime_error("estimate_outer: zero pair probability");
      const double v = x_on_b[a] * x_on_b[c] / pp;
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

}  // namespace oslr
