#include "oslr/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace oslr {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kSqrt6 = 2.4494897427831780982;

struct VariantDims {
  double g;    // g_{d,k} or g_{d',k0}
  double dd;   // d-1 or d'-1
  double kk;   // k-1 or k0-1
  int dv;      // d or d'
  int kv;      // k or k0
};

VariantDims variant_dims(const ProblemConstants& pc) {
  if (pc.variant == Variant::Oslr)
    return {g_factor(pc.d, pc.k), double(pc.d - 1), double(pc.k - 1), pc.d, pc.k};
  return {g_factor(pc.d_prime(), pc.k0), double(pc.d_prime() - 1), double(pc.k0 - 1),
          pc.d_prime(), pc.k0};
}

}  // namespace

void ProblemConstants::validate() const {
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("ProblemConstants: delta not in (0,1)");
  if (delta_S <= 0.0) throw std::invalid_argument("ProblemConstants: delta_S must be positive");
  if (sigma < 0.0) throw std::invalid_argument("ProblemConstants: sigma must be nonnegative");
  if (variant == Variant::Oslr) {
    if (k < 3 || k > d - 3)
      throw std::invalid_argument("ProblemConstants: OSLR requires 3 <= k <= d-3");
  } else {
    if (k < 1 || k >= d) throw std::invalid_argument("ProblemConstants: POSLR requires 1 <= k < d");
    // k0 = d' (observe the whole complement) is allowed as the degenerate
    // full-information case; the paper's guarantees hold for k0 <= d'-3.
    if (k0 < 3 || k0 > d_prime())
      throw std::invalid_argument("ProblemConstants: POSLR requires 3 <= k0 <= d-k");
  }
}

double g_factor(int d, int k) {
  if (k < 3) throw std::invalid_argument("g_factor: k must be at least 3");
  if (d < k) throw std::invalid_argument("g_factor: d must be at least k");
  return (double(d - 1) * double(d - 2)) / (double(k - 1) * double(k - 2));
}

ScheduleConstants derive_constants(const ProblemConstants& pc) {
  // Only formula-level validity is needed here; the algorithmic range
  // (k <= d-3 and the POSLR budget) is enforced where a run starts.
  if (pc.delta <= 0.0 || pc.delta >= 1.0)
    throw std::invalid_argument("derive_constants: delta not in (0,1)");
  if (pc.delta_S <= 0.0) throw std::invalid_argument("derive_constants: delta_S must be positive");
  const VariantDims v = variant_dims(pc);
  const double L = std::log(double(pc.d) / pc.delta);
  const double L2 = std::log(double(pc.d) * pc.d / pc.delta);
  const double ds2 = pc.delta_S * pc.delta_S;
  const double ds4 = ds2 * ds2;
  const double k = pc.k;
  const double sigma = pc.sigma;

  ScheduleConstants sc;
  sc.g = v.g;
  sc.mu1 = 9.0 / (9.0 - 2.0 * kSqrt3);

  const double mu2_root = (double(v.dv - 2) / double(v.kv - 2)) * L2;
  if (mu2_root <= 6.0 / 81.0)
    throw std::invalid_argument("derive_constants: mu2 denominator is nonpositive");
  sc.mu2 = 1.0 / (1.0 - kSqrt6 / (9.0 * std::sqrt(mu2_root)));

  sc.s0 = 576.0 * k * k * v.g / ds4 * L2;
  sc.s1 = 576.0 * k * k * v.g / ds4 * (double(v.dv - 2) / double(v.kv - 2)) * L * L2;

  sc.a1 = (64.0 / 3.0 + 32.0 / 3.0 * sigma) * L;
  sc.a2 = 16.0 * (6.9 + 1.2 * sigma) / 3.0 * std::sqrt(L);
  sc.a3 = 8.0 / 3.0 * std::sqrt(3.0 * L);
  sc.a4 = ds2 * sc.a1 / k + 24.0 * sc.a2 * std::sqrt(double(v.kv - 2) / double(v.dv - 2) * L2) +
          4.0 * sc.a3 * (24.0 * std::sqrt(L2) + ds2 / (k * std::sqrt(v.g)));

  if (pc.variant == Variant::Oslr) {
    sc.a5 = sc.mu1 * (ds2 * (8.0 + 4.0 * sigma) / (9.0 * k) + 32.0 / kSqrt3 +
                      4.0 * kSqrt3 * ds2 / (9.0 * k * std::sqrt(v.g * L2))) +
            sc.a2 + 2.0 * kSqrt3 * sc.a2 / (9.0 - 2.0 * kSqrt3) *
                        std::sqrt(double(v.kv - 2) / (double(v.dv - 2) * L2));
  } else {
    sc.a5 = 36.0 / (9.0 - 2.0 * kSqrt3) *
                (ds2 * (2.0 + sigma) / (9.0 * k) + 8.0 / kSqrt3 +
                 kSqrt3 / 9.0 * ds2 / (k * std::sqrt(v.g * L2))) +
            sc.a2 + 2.0 * kSqrt3 * sc.a2 / (9.0 - 2.0 * kSqrt3) *
                        std::sqrt(double(v.kv - 2) / (double(v.dv - 2) * L2));
  }
  return sc;
}

ScheduleConstants practical_scale(const ScheduleConstants& sc, double c) {
  if (c <= 0.0 || c > 1.0) throw std::invalid_argument("practical_scale: c must lie in (0, 1]");
  ScheduleConstants out = sc;
  out.scale = sc.scale * c;
  return out;
}

NuSequence::NuSequence(const ScheduleConstants& sc, const ProblemConstants& pc) {
  const VariantDims v = variant_dims(pc);
  const double L = std::log(double(pc.d) / pc.delta);
  root3gl_ = std::sqrt(3.0 * v.g * L);
  g_ = v.g;
  k_ = pc.k;
  dd_ = v.dd;
  kk_ = v.kk;
  l2_ = std::log(double(pc.d) * pc.d / pc.delta);
  delta_S_ = pc.delta_S;
  mu1_ = sc.mu1;
  mu2_ = sc.mu2;
  a4_ = sc.a4;
  a5_ = sc.a5;
  s0f_ = static_cast<long>(std::floor(sc.s0));
  s1f_ = static_cast<long>(std::floor(sc.s1));
}

double NuSequence::case1(long s) const { return 2.0 / std::sqrt(double(s)) * root3gl_; }

double NuSequence::case2(long s) const {
  const double ds2 = delta_S_ * delta_S_;
  return root3gl_ / double(s) * (48.0 * k_ / ds2 * std::sqrt(g_ * l2_) + 2.0);
}

double NuSequence::next() {
  const long s = ++s_;
  const double ds2 = delta_S_ * delta_S_;
  const double ds4 = ds2 * ds2;

  // Maintain the running partial sums one step behind s.
  const long tau = s - 1;
  if (tau >= s0f_ + 1 && tau <= s1f_) sum_inv_sq_ += 1.0 / (double(tau) * double(tau));
  if (tau >= s1f_ + 1) sum_inv_ += 1.0 / double(tau);

  double nu;
  if (s <= s0f_) {
    nu = case1(s);
  } else if (s == s0f_ + 1) {
    nu = case2(s);
    nu_anchor0_ = nu;
  } else if (s <= s1f_) {
    nu = double(s0f_ + 1) / double(s) * nu_anchor0_ +
         root3gl_ / double(s) * mu1_ * a4_ / ds4 *
             std::sqrt(k_ * k_ * k_ * k_ * g_ * g_ * sum_inv_sq_);
  } else if (s == s1f_ + 1) {
    nu = root3gl_ / double(s) *
         (48.0 * k_ / ds2 * std::sqrt(g_ * l2_) + 2.0 +
          mu1_ * a4_ * k_ * k_ * g_ / ds4 * std::sqrt(sum_inv_sq_));
    nu_anchor1_ = nu;
  } else {
    nu = double(s1f_ + 1) / double(s) * nu_anchor1_ +
         root3gl_ / double(s) * mu2_ * a5_ / ds2 * std::sqrt(k_ * k_ * dd_ / kk_ * sum_inv_);
  }
  return nu;
}

double NuSequence::from_scratch(long s) const {
  const double ds2 = delta_S_ * delta_S_;
  const double ds4 = ds2 * ds2;
  if (s <= s0f_) return case1(s);
  if (s == s0f_ + 1) return case2(s);
  if (s <= s1f_) {
    double acc = 0.0;
    for (long tau = s0f_ + 1; tau <= s - 1; ++tau)
      acc += k_ * k_ * k_ * k_ * g_ * g_ / (double(tau) * double(tau));
    return double(s0f_ + 1) / double(s) * case2(s0f_ + 1) +
           root3gl_ / double(s) * mu1_ * a4_ / ds4 * std::sqrt(acc);
  }
  double inv_sq = 0.0;
  for (long tau = s0f_ + 1; tau <= s1f_; ++tau) inv_sq += 1.0 / (double(tau) * double(tau));
  const double anchor1 = root3gl_ / double(s1f_ + 1) *
                         (48.0 * k_ / ds2 * std::sqrt(g_ * l2_) + 2.0 +
                          mu1_ * a4_ * k_ * k_ * g_ / ds4 * std::sqrt(inv_sq));
  if (s == s1f_ + 1) return anchor1;
  double acc = 0.0;
  for (long tau = s1f_ + 1; tau <= s - 1; ++tau) acc += k_ * k_ * dd_ / (double(tau) * kk_);
  return double(s1f_ + 1) / double(s) * anchor1 +
         root3gl_ / double(s) * mu2_ * a5_ / ds2 * std::sqrt(acc);
}

double gamma_hat(long s, double nu_s, const ScheduleConstants& sc, const ProblemConstants& pc) {
  const VariantDims v = variant_dims(pc);
  const double L = std::log(double(pc.d) / pc.delta);
  const double term1 = (8.0 / 3.0 + 2.0 * pc.sigma) * v.g / double(s) * L;
  const double term2 = (6.9 + 1.2 * pc.sigma) / std::sqrt(double(s)) * std::sqrt(v.dd / v.kk * L);
  return sc.scale * (term1 + term2 + nu_s);
}

double theoretical_gamma(long s, double sum_sq, const ScheduleConstants& sc,
                         const ProblemConstants& pc) {
  const VariantDims v = variant_dims(pc);
  const double L = std::log(double(pc.d) / pc.delta);
  const double term1 = (8.0 / 3.0 + 2.0 * pc.sigma) * v.g / double(s) * L;
  const double term2 = (6.9 + 1.2 * pc.sigma) / std::sqrt(double(s)) * std::sqrt(v.dd / v.kk * L);
  const double term3 = std::sqrt(3.0 * v.g * sum_sq * L) / double(s);
  (void)sc;
  return term1 + term2 + term3;
}

double theoretical_gamma(long s, std::span<const double> delta_history,
                         const ScheduleConstants& sc, const ProblemConstants& pc) {
  if (static_cast<long>(delta_history.size()) < s)
    throw std::invalid_argument("theoretical_gamma: history shorter than s");
  double sum_sq = 0.0;
  for (long tau = 0; tau < s; ++tau) sum_sq += delta_history[tau] * delta_history[tau];
  return theoretical_gamma(s, sum_sq, sc, pc);
}

OnsParams ons_params(double sigma, double delta, int k) {
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("ons_params: delta not in (0,1)");
  OnsParams p;
  p.Y_delta = 1.0 + sigma * std::sqrt(2.0 * std::log(1.0 / delta));
  p.rho = 1.0 / (2.0 * (1.0 + p.Y_delta) * (1.0 + p.Y_delta));
  p.epsilon = double(k);
  return p;
}

}  // namespace oslr
