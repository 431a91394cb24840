#pragma once

#include <span>
#include <vector>

namespace oslr {

enum class Variant { Oslr, Poslr };

/// Inputs of the learner together with the noise and probability parameters.
struct ProblemConstants {
  int d = 0;
  int k = 0;
  double sigma = 0.0;
  double delta = 0.1;       // failure probability, in (0,1)
  double delta_S = 1.0;     // compatibility constant (given, not estimated online)
  Variant variant = Variant::Oslr;
  int k0 = 0;               // POSLR post-label budget

  int d_prime() const { return d - k; }
  void validate() const;  // throws std::invalid_argument on bad inputs
};

/// Every derived constant of the threshold schedule. `scale` is the
/// practical-mode factor applied to gamma_hat; 1 reproduces the exact
/// formulas.
struct ScheduleConstants {
  double g = 0.0;
  double mu1 = 0.0, mu2 = 0.0;
  double s0 = 0.0, s1 = 0.0;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0, a5 = 0.0;
  double scale = 1.0;
};

/// g_{d,k} = (d-1)(d-2) / ((k-1)(k-2)).
double g_factor(int d, int k);

ScheduleConstants derive_constants(const ProblemConstants& pc);

/// Returns a copy with the gamma_hat magnitude scaled by c in (0,1].
/// Regime thresholds s0, s1 are untouched.
ScheduleConstants practical_scale(const ScheduleConstants& sc, double c);

/// The piecewise threshold-estimator sequence nu_s. Regime boundaries use
/// floor(s0) and floor(s1); the anchor cases sit at floor(s0)+1 and
/// floor(s1)+1. Values are unscaled; the practical factor enters gamma_hat.
class NuSequence {
 public:
  NuSequence(const ScheduleConstants& sc, const ProblemConstants& pc);

  /// nu for s = 1, 2, 3, ... in order (one call per exploration round).
  double next();

  /// Recomputes nu_s from scratch by direct summation; O(s). Test oracle for
  /// the incremental recursion.
  double from_scratch(long s) const;

  long current_s() const { return s_; }

 private:
  double case1(long s) const;
  double case2(long s) const;

  double root3gl_ = 0.0;      // sqrt(3 g ln(d/delta))
  double g_ = 0.0;
  double k_ = 0.0;            // budget k (the exploration budget in both variants)
  double dd_ = 0.0, kk_ = 0.0;  // (d-1, k-1) or (d'-1, k0-1)
  double l2_ = 0.0;           // ln(d^2/delta)
  double delta_S_ = 0.0;
  double mu1_ = 0.0, mu2_ = 0.0, a4_ = 0.0, a5_ = 0.0;
  long s0f_ = 0, s1f_ = 0;

  long s_ = 0;
  double nu_anchor0_ = 0.0, nu_anchor1_ = 0.0;
  double sum_inv_sq_ = 0.0;   // sum over tau in [s0f+1, min(s-1, s1f)] of 1/tau^2
  double sum_inv_ = 0.0;      // sum over tau in [s1f+1, s-1] of 1/tau
};

/// gamma_hat_s = scale * [ (8/3+2s)(g/s)ln(d/delta)
///                         + ((6.9+1.2s)/sqrt(s)) sqrt(((d-1)/(k-1)) ln(d/delta))
///                         + nu_s ].
/// The POSLR variant swaps in (g_{d',k0}, d'-1, k0-1); ln(d/delta) keeps d.
double gamma_hat(long s, double nu_s, const ScheduleConstants& sc, const ProblemConstants& pc);

/// The oracle threshold gamma_s, which needs the ground-truth error history:
/// sum_sq = sum over tau=1..s of ||Delta_{tau-1}(S)||_1^2. Never scaled.
double theoretical_gamma(long s, double sum_sq, const ScheduleConstants& sc,
                         const ProblemConstants& pc);

/// Convenience overload taking the history ||Delta_0(S)||_1 .. ||Delta_{s-1}(S)||_1.
double theoretical_gamma(long s, std::span<const double> delta_history,
                         const ScheduleConstants& sc, const ProblemConstants& pc);

struct OnsParams {
  double Y_delta = 0.0;
  double rho = 0.0;
  double epsilon = 0.0;
};

/// Y_delta = 1 + sigma sqrt(2 ln(1/delta)), rho = 1/(2(1+Y_delta)^2), eps = k.
OnsParams ons_params(double sigma, double delta, int k);

}  // namespace oslr
