#include "oslr/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace oslr {

SamplingWeights normalize_weights(const Eigen::VectorXd& w) {
  const int d = static_cast<int>(w.size());
  if (d < 1) throw std::invalid_argument("normalize_weights: empty vector");
  const double l1 = w.cwiseAbs().sum();
  SamplingWeights out;
  if (l1 == 0.0) {
    out.q = Eigen::VectorXd::Constant(d, 1.0 / d);
  } else {
    out.q = w.cwiseAbs() / l1;
  }
  return out;
}

FeatureSet sample_feature_set(const SamplingWeights& q, int k, Rng& rng) {
  const int d = q.dim();
  if (k < 1 || k > d) throw std::invalid_argument("sample_feature_set: budget k out of [1, d]");

  FeatureSet fs;
  fs.budget = k;
  fs.indices.reserve(k);

  // Inverse-CDF draw for the first index.
  double u = rng.uniform01();
  int first = d - 1;
  double cum = 0.0;
  for (int i = 0; i < d; ++i) {
    cum += q.q[i];
    if (u < cum) {
      first = i;
      break;
    }
  }
  fs.indices.push_back(first);

  // Uniform draws without replacement from the remaining d-1 indices.
  std::vector<int> rest;
  rest.reserve(d - 1);
  for (int i = 0; i < d; ++i)
    if (i != first) rest.push_back(i);
  for (int r = 1; r < k; ++r) {
    const int pick = rng.below(static_cast<int>(rest.size()));
    fs.indices.push_back(rest[pick]);
    rest[pick] = rest.back();
    rest.pop_back();
  }
  std::sort(fs.indices.begin(), fs.indices.end());
  return fs;
}

namespace {

void check_index(int d, int i, const char* who) {
  if (i < 0 || i >= d) throw std::out_of_range(std::string(who) + ": index out of range");
}

}  // namespace

double p_single(const SamplingWeights& q, int k, int i) {
  const int d = q.dim();
  check_index(d, i, "p_single");
  if (k < 1 || k > d) throw std::invalid_argument("p_single: budget out of range");
  if (d == 1) return 1.0;
  return (static_cast<double>(d - k) * q.q[i] + static_cast<double>(k - 1)) / static_cast<double>(d - 1);
}

double p_pair(const SamplingWeights& q, int k, int i, int j) {
  const int d = q.dim();
  check_index(d, i, "p_pair");
  check_index(d, j, "p_pair");
  if (i == j) throw std::invalid_argument("p_pair: indices must differ (use p_single for the diagonal)");
  if (k < 2 || k > d) throw std::invalid_argument("p_pair: budget out of range");
  if (k == d) return 1.0;
  const double num = static_cast<double>(k - 1) * (k - 2) +
                     static_cast<double>(k - 1) * (d - k) * (q.q[i] + q.q[j]);
  return num / (static_cast<double>(d - 1) * (d - 2));
}

double p_triple(const SamplingWeights& q, int k, int i, int j, int r) {
  const int d = q.dim();
  check_index(d, i, "p_triple");
  check_index(d, j, "p_triple");
  check_index(d, r, "p_triple");
  if (i == j || i == r || j == r) throw std::invalid_argument("p_triple: indices must be pairwise distinct");
  if (k < 3 || k > d) throw std::invalid_argument("p_triple: budget out of range");
  if (k == d) return 1.0;
  const double num = static_cast<double>(k - 1) * (k - 2) * (k - 3) +
                     static_cast<double>(k - 1) * (k - 2) * (d - k) * (q.q[i] + q.q[j] + q.q[r]);
  return num / (static_cast<double>(d - 1) * (d - 2) * (d - 3));
}

namespace {

struct EnumState {
  InclusionTables* tables;
  const Eigen::VectorXd* q;
  int d, k;
  std::vector<int> chosen;
  std::vector<bool> used;

  void leaf(double prob) {
    InclusionTables& t = *tables;
    const int m = static_cast<int>(chosen.size());
    for (int a = 0; a < m; ++a) {
      const int i = chosen[a];
      t.single[i] += prob;
      for (int b = 0; b < m; ++b) {
        if (b == a) continue;
        t.pair(i, chosen[b]) += prob;
        for (int c = 0; c < m; ++c) {
          if (c == a || c == b) continue;
          t.triple[(static_cast<size_t>(i) * d + chosen[b]) * d + chosen[c]] += prob;
        }
      }
    }
  }

  // Walks every ordered sequence of the k-1 uniform draws.
  void recurse(double prob, int depth) {
    if (depth == k) {
      leaf(prob);
      return;
    }
    const double step = 1.0 / static_cast<double>(d - depth);
    for (int i = 0; i < d; ++i) {
      if (used[i]) continue;
      used[i] = true;
      chosen.push_back(i);
      recurse(prob * step, depth + 1);
      chosen.pop_back();
      used[i] = false;
    }
  }
};

}  // namespace

InclusionTables enumerate_distribution(const SamplingWeights& q, int k) {
  const int d = q.dim();
  if (d > 8) throw std::invalid_argument("enumerate_distribution: d > 8 (ordered draw tree too large)");
  if (k < 1 || k > d) throw std::invalid_argument("enumerate_distribution: budget out of range");

  InclusionTables tables;
  tables.d = d;
  tables.single = Eigen::VectorXd::Zero(d);
  tables.pair = Eigen::MatrixXd::Zero(d, d);
  tables.triple.assign(static_cast<size_t>(d) * d * d, 0.0);

  EnumState st{&tables, &q.q, d, k, {}, std::vector<bool>(d, false)};
  for (int first = 0; first < d; ++first) {
    const double p0 = q.q[first];
    if (p0 == 0.0) continue;
    st.used[first] = true;
    st.chosen.push_back(first);
    st.recurse(p0, 1);
    st.chosen.pop_back();
    st.used[first] = false;
  }
  for (int i = 0; i < d; ++i) tables.pair(i, i) = tables.single[i];
  return tables;
}

}  // namespace oslr
