#include "oslr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace oslr {

GroundTruth gen_ground_truth(int d, int k, double h_min, double sigma, Rng& rng) {
  if (k < 1 || k > d) throw std::invalid_argument("gen_ground_truth: k out of [1, d]");
  if (h_min <= 0.0 || double(k) * h_min > 1.0)
    throw std::invalid_argument("gen_ground_truth: need 0 < h_min and k*h_min <= 1");

  // Uniform k-subset via partial Fisher-Yates.
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  for (int a = 0; a < k; ++a) {
    const int b = a + rng.below(d - a);
    std::swap(idx[a], idx[b]);
  }
  GroundTruth gt;
  gt.support.assign(idx.begin(), idx.begin() + k);
  std::sort(gt.support.begin(), gt.support.end());
  gt.sigma = sigma;
  gt.h_min = h_min;
  gt.w_star = Eigen::VectorXd::Zero(d);
  for (int i : gt.support) gt.w_star[i] = rng.sign() * rng.uniform(h_min, 1.0 / double(k));
  return gt;
}

Round gen_round(const GroundTruth& gt, const DesignSpec& design, Rng& rng) {
  const int d = gt.dim();
  Round r;
  r.x.resize(d);
  switch (design.kind) {
    case DesignKind::Rademacher:
      for (int i = 0; i < d; ++i) r.x[i] = double(rng.sign());
      break;
    case DesignKind::UniformBox:
      for (int i = 0; i < d; ++i) r.x[i] = rng.uniform(-1.0, 1.0);
      break;
    case DesignKind::CorrelatedGaussianClipped: {
      const double rho = design.rho_x;
      const double sd = 0.5;
      double z = rng.normal(0.0, sd);
      r.x[0] = std::clamp(z, -1.0, 1.0);
      const double innov = std::sqrt(std::max(0.0, 1.0 - rho * rho));
      for (int i = 1; i < d; ++i) {
        z = rho * z + innov * rng.normal(0.0, sd);
        r.x[i] = std::clamp(z, -1.0, 1.0);
      }
      break;
    }
  }
  r.y = gt.w_star.dot(r.x);
  if (gt.sigma > 0.0) r.y += rng.normal(0.0, gt.sigma);
  return r;
}

namespace {

// Projects v (componentwise magnitudes) onto the l1 ball of radius z.
void project_l1_ball(Eigen::VectorXd& v, double z) {
  const double l1 = v.cwiseAbs().sum();
  if (l1 <= z) return;
  // Duchi et al. style threshold on sorted magnitudes.
  std::vector<double> mags(v.size());
  for (int i = 0; i < v.size(); ++i) mags[i] = std::abs(v[i]);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (size_t j = 0; j < mags.size(); ++j) {
    cum += mags[j];
    const double t = (cum - z) / double(j + 1);
    if (t >= (j + 1 < mags.size() ? mags[j + 1] : 0.0)) {
      theta = t;
      break;
    }
  }
  for (int i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]) - theta;
    v[i] = mag > 0.0 ? (v[i] > 0.0 ? mag : -mag) : 0.0;
  }
}

}  // namespace

namespace {

// Projects v onto the canonical simplex {v_i >= 0, sum v_i = 1}.
void project_simplex(Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / double(j + 1);
    if (j + 1 == u.size() || t >= u[j + 1]) {
      theta = t;
      break;
    }
  }
  for (int i = 0; i < v.size(); ++i) v[i] = std::max(v[i] - theta, 0.0);
}

}  // namespace

double estimate_compatibility(const Eigen::MatrixXd& X, const std::vector<int>& S, double alpha,
                              Rng& rng, int restarts, int iters) {
  const int d = static_cast<int>(X.rows());
  const long n = X.cols();
  if (n < 1 || S.empty()) throw std::invalid_argument("estimate_compatibility: empty inputs");
  const int sk = static_cast<int>(S.size());

  std::vector<bool> on(d, false);
  for (int i : S) on[i] = true;
  std::vector<int> comp;
  for (int i = 0; i < d; ++i)
    if (!on[i]) comp.push_back(i);

  const Eigen::MatrixXd C = (X * X.transpose()) / double(n);

  // Lipschitz constant of the gradient, via a short power iteration.
  Eigen::VectorXd pv = Eigen::VectorXd::Ones(d).normalized();
  for (int it = 0; it < 30; ++it) pv = (C * pv).normalized();
  const double lip = std::max(1e-12, 2.0 * double(sk) * pv.dot(C * pv));

  // On the set {sum_S eps_i w_i = 1, eps_i w_i >= 0, ||w(S^c)||_1 <= alpha}
  // the quotient equals |S| w^T C w, convex; only the sign pattern on S is
  // combinatorial. Projected gradient descent per pattern, multiple starts.
  const int patterns = sk <= 16 ? (1 << (sk - 1)) : (1 << 16);
  const int starts = std::max(1, (restarts + patterns - 1) / patterns);

  const auto quotient = [&](const Eigen::VectorXd& w) {
    double l1s = 0.0;
    for (int i : S) l1s += std::abs(w[i]);
    return double(sk) * w.dot(C * w) / (l1s * l1s);
  };

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd w(d), vs(sk), vc(static_cast<long>(comp.size()));
  for (int pat = 0; pat < patterns; ++pat) {
    Eigen::VectorXd eps(sk);
    for (int a = 0; a < sk; ++a) eps[a] = (a > 0 && (pat >> (a - 1)) & 1) ? -1.0 : 1.0;

    for (int start = 0; start < starts; ++start) {
      if (start == 0) {
        vs.setConstant(1.0 / double(sk));
        vc.setZero();
      } else {
        for (int a = 0; a < sk; ++a) vs[a] = rng.uniform01();
        project_simplex(vs);
        for (long a = 0; a < vc.size(); ++a) vc[a] = rng.normal();
        project_l1_ball(vc, alpha);
      }
      for (int it = 0; it < iters; ++it) {
        w.setZero();
        for (int a = 0; a < sk; ++a) w[S[a]] = eps[a] * vs[a];
        for (size_t a = 0; a < comp.size(); ++a) w[comp[a]] = vc[static_cast<long>(a)];
        best = std::min(best, quotient(w));

        const Eigen::VectorXd grad = 2.0 * double(sk) * (C * w);
        for (int a = 0; a < sk; ++a) vs[a] -= eps[a] * grad[S[a]] / lip;
        for (size_t a = 0; a < comp.size(); ++a)
          vc[static_cast<long>(a)] -= grad[comp[a]] / lip;
        project_simplex(vs);
        project_l1_ball(vc, alpha);
      }
      w.setZero();
      for (int a = 0; a < sk; ++a) w[S[a]] = eps[a] * vs[a];
      for (size_t a = 0; a < comp.size(); ++a) w[comp[a]] = vc[static_cast<long>(a)];
      best = std::min(best, quotient(w));
    }
  }
  return best;
}

Eigen::VectorXd best_k_sparse(const Eigen::MatrixXd& X, const Eigen::VectorXd& Y, int k) {
  const int d = static_cast<int>(X.rows());
  const long n = X.cols();
  if (d > 12) throw std::invalid_argument("best_k_sparse: d > 12 (support enumeration too large)");
  if (k < 1 || k > d) throw std::invalid_argument("best_k_sparse: k out of [1, d]");
  if (Y.size() != n) throw std::invalid_argument("best_k_sparse: X/Y size mismatch");

  std::vector<int> comb(k);
  std::iota(comb.begin(), comb.end(), 0);
  Eigen::VectorXd best_w = Eigen::VectorXd::Zero(d);
  double best_loss = std::numeric_limits<double>::infinity();

  while (true) {
    Eigen::MatrixXd Xs(n, k);
    for (int a = 0; a < k; ++a) Xs.col(a) = X.row(comb[a]).transpose();
    const Eigen::VectorXd coef = Xs.colPivHouseholderQr().solve(Y);
    const double loss = (Xs * coef - Y).squaredNorm();
    if (loss < best_loss) {
      best_loss = loss;
      best_w.setZero();
      for (int a = 0; a < k; ++a) best_w[comb[a]] = coef[a];
    }
    // Next combination in lexicographic order.
    int a = k - 1;
    while (a >= 0 && comb[a] == d - k + a) --a;
    if (a < 0) break;
    ++comb[a];
    for (int b = a + 1; b < k; ++b) comb[b] = comb[b - 1] + 1;
  }
  return best_w;
}

L1Errors l1_errors(const Eigen::VectorXd& w_hat, const GroundTruth& gt) {
  const Eigen::VectorXd delta = w_hat - gt.w_star;
  L1Errors e;
  e.full_l1 = delta.cwiseAbs().sum();
  e.full_l2 = delta.norm();
  for (int i : gt.support) e.on_support += std::abs(delta[i]);
  return e;
}

}  // namespace oslr
