// Acceptance suite: one pass/fail line per criterion, exit nonzero on any
// failure. `acceptance --only N` runs a single criterion (runs shared with a
// sibling criterion are re-executed as needed).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <future>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oslr/dantzig.hpp"
#include "oslr/estimation.hpp"
#include "oslr/experiment.hpp"
#include "oslr/runner.hpp"
#include "oslr/sampling.hpp"

using namespace oslr;

namespace {

int g_failures = 0;
int g_only = 0;

bool wanted(int criterion) { return g_only == 0 || g_only == criterion; }

void report(int criterion, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::ostringstream line;
  line << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << name;
  if (!detail.empty()) line << " -- " << detail;
  line << " (" << std::fixed << seconds << "s)";
  std::cout << line.str() << std::endl;
  if (!pass) ++g_failures;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
  return 0.5 * (v[mid - 1] + hi);
}

template <typename Fn>
void parallel_trials(int n, Fn&& fn) {
  std::atomic<int> next{0};
  const int workers = std::min(n, 2);
  std::vector<std::future<void>> futs;
  for (int w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    }));
  }
  for (auto& f : futs) f.get();
}

SamplingWeights random_weights(int d, Rng& rng) {
  Eigen::VectorXd w(d);
  for (int i = 0; i < d; ++i) w[i] = rng.uniform01();
  if (d > 2 && rng.below(3) == 0) w[rng.below(d)] = 0.0;
  return normalize_weights(w);
}

// ---------------------------------------------------------------- 1 and 2

void criterion_1_and_2() {
  Timer timer;
  double max_abs_err = 0.0;
  double max_budget_err = 0.0;
  double max_ratio_excess = -std::numeric_limits<double>::infinity();
  Rng rng(20250801);

  for (int d = 3; d <= 8; ++d) {
    for (int k = 3; k <= d; ++k) {
      for (int rep = 0; rep < 50; ++rep) {
        const SamplingWeights q = random_weights(d, rng);
        const InclusionTables tab = enumerate_distribution(q, k);
        double budget = 0.0;
        for (int i = 0; i < d; ++i) {
          budget += p_single(q, k, i);
          max_abs_err = std::max(max_abs_err, std::abs(tab.single[i] - p_single(q, k, i)));
          for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            const double pij = p_pair(q, k, i, j);
            max_abs_err = std::max(max_abs_err, std::abs(tab.pair(i, j) - pij));
            if (d >= 4) {
              for (int r = 0; r < d; ++r) {
                if (r == i || r == j) continue;
                const double pijr = p_triple(q, k, i, j, r);
                max_abs_err = std::max(max_abs_err, std::abs(tab.trip(i, j, r) - pijr));
                const double ratio = pijr / (pij * p_pair(q, k, i, r));
                max_ratio_excess =
                    std::max(max_ratio_excess, ratio - double(d - 1) / double(k - 1));
              }
            }
          }
        }
        max_budget_err = std::max(max_budget_err, std::abs(budget - double(k)));
      }
    }
  }
  const double t = timer.seconds();
  {
    std::ostringstream d;
    d << "max |closed - enumerated| = " << max_abs_err;
    report(1, "sampling-law exactness", max_abs_err <= 1e-12 && t < 10.0, d.str(), t);
  }
  {
    std::ostringstream d;
    d << "max |sum p - k| = " << max_budget_err << ", max ratio excess = " << max_ratio_excess;
    report(2, "budget identity and ratio bound",
           max_budget_err <= 1e-10 && max_ratio_excess <= 1e-10 && t < 5.0 + 10.0, d.str(),
           timer.seconds());
  }
}

// --------------------------------------------------------------------- 3

void criterion_3() {
  Timer timer;
  const int d = 8, k = 3;
  Eigen::VectorXd w(d);
  w << 0.35, 0.05, 0.2, 0.0, 0.15, 0.1, 0.1, 0.05;
  const SamplingWeights q = normalize_weights(w);
  const SamplingLaw law(q, k);
  Eigen::VectorXd x(d);
  x << 0.9, -0.4, 0.7, -1.0, 0.2, 1.0, -0.6, 0.3;

  Rng rng(777);
  const long N = 1000000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d), sum_sq = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd hsum = Eigen::MatrixXd::Zero(d, d), hsum_sq = Eigen::MatrixXd::Zero(d, d);
  std::vector<double> x_on_b;
  for (long n = 0; n < N; ++n) {
    const FeatureSet b = sample_feature_set(q, k, rng);
    x_on_b.clear();
    for (int i : b.indices) x_on_b.push_back(x[i]);
    const Eigen::VectorXd xhat = estimate_instance(x_on_b, b, law);
    const Eigen::MatrixXd h = estimate_outer(x_on_b, b, law);
    sum += xhat;
    sum_sq += xhat.cwiseProduct(xhat);
    hsum += h;
    hsum_sq += h.cwiseProduct(h);
  }

  double worst_sigmas = 0.0;
  for (int i = 0; i < d; ++i) {
    const double mean = sum[i] / double(N);
    const double se = std::sqrt(std::max(sum_sq[i] / double(N) - mean * mean, 1e-30) / double(N));
    worst_sigmas = std::max(worst_sigmas, std::abs(mean - x[i]) / std::max(se, 1e-15));
  }
  const Eigen::MatrixXd xxT = x * x.transpose();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double mean = hsum(i, j) / double(N);
      const double se =
          std::sqrt(std::max(hsum_sq(i, j) / double(N) - mean * mean, 1e-30) / double(N));
      worst_sigmas = std::max(worst_sigmas, std::abs(mean - xxT(i, j)) / std::max(se, 1e-15));
    }
  }
  const double t = timer.seconds();
  std::ostringstream detail;
  detail << "worst deviation = " << worst_sigmas << " standard errors over " << N << " draws";
  report(3, "estimator unbiasedness", worst_sigmas <= 4.0 && t < 60.0, detail.str(), t);
}

// --------------------------------------------------------------------- 4

double grid_search_objective(const DantzigProblem& p, double res) {
  const int d = p.dim();
  const double lo = -2.0, hi = 2.0;
  const long steps = static_cast<long>(std::llround((hi - lo) / res));
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd partial = Eigen::VectorXd::Zero(std::max(0, d - 1));

  const auto last_coord = [&]() {
    double ivlo = lo, ivhi = hi;
    for (int row = 0; row < d; ++row) {
      double c = p.bbar[row];
      for (int j = 0; j + 1 < d; ++j) c -= p.Mbar(row, j) * partial[j];
      const double m = p.Mbar(row, d - 1);
      if (std::abs(m) < 1e-15) {
        if (std::abs(c) > p.gamma) return;
        continue;
      }
      double a = (c - p.gamma) / m, b = (c + p.gamma) / m;
      if (a > b) std::swap(a, b);
      ivlo = std::max(ivlo, a);
      ivhi = std::min(ivhi, b);
    }
    if (ivlo > ivhi) return;
    double obj = std::abs(std::clamp(0.0, ivlo, ivhi));
    for (int j = 0; j + 1 < d; ++j) obj += std::abs(partial[j]);
    best = std::min(best, obj);
  };

  if (d == 1) {
    last_coord();
  } else if (d == 2) {
    for (long i = 0; i <= steps; ++i) {
      partial[0] = lo + double(i) * res;
      last_coord();
    }
  } else {
    for (long i = 0; i <= steps; ++i) {
      partial[0] = lo + double(i) * res;
      for (long j = 0; j <= steps; ++j) {
        partial[1] = lo + double(j) * res;
        last_coord();
      }
    }
  }
  return best;
}

void criterion_4() {
  Timer timer;
  Rng rng(424242);
  double worst_identity = 0.0, worst_resid = 0.0;
  bool all_ok = true;

  for (int rep = 0; rep < 500; ++rep) {
    const int d = 1 + rng.below(20);
    Eigen::VectorXd b(d);
    for (int i = 0; i < d; ++i) b[i] = rng.uniform(-1.0, 1.0);
    const double gamma = rng.uniform01() * 1.1;
    const DantzigSolution s = solve_dantzig(DantzigProblem(b, Eigen::MatrixXd::Identity(d, d), gamma));
    if (!s.ok()) {
      all_ok = false;
      continue;
    }
    worst_identity =
        std::max(worst_identity, std::abs(s.objective - soft_threshold(b, gamma).cwiseAbs().sum()));
    worst_resid = std::max(worst_resid, s.residual_inf - gamma);
  }

  double worst_grid = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int d = 1 + rng.below(3);
    Eigen::MatrixXd M(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) M(i, j) = rng.uniform(-1.0, 1.0);
    M = (0.5 * (M + M.transpose().eval()) + double(d + 1) * Eigen::MatrixXd::Identity(d, d)).eval();
    Eigen::VectorXd b(d);
    for (int i = 0; i < d; ++i) b[i] = rng.uniform(-1.0, 1.0);
    // Keep the feasible set wider than the grid pitch so the oracle is sharp.
    const double gamma = (0.3 + 0.5 * rng.uniform01()) * std::max(b.cwiseAbs().maxCoeff(), 0.2);
    const DantzigProblem p(b, M, gamma);
    const DantzigSolution s = solve_dantzig(p);
    if (!s.ok()) {
      all_ok = false;
      continue;
    }
    worst_resid = std::max(worst_resid, s.residual_inf - gamma);
    worst_grid = std::max(worst_grid, std::abs(s.objective - grid_search_objective(p, 1e-3)));
  }

  const double t = timer.seconds();
  std::ostringstream detail;
  detail << "identity gap = " << worst_identity << ", grid gap = " << worst_grid
         << ", residual excess = " << worst_resid;
  report(4, "lp oracle equivalence",
         all_ok && worst_identity <= 1e-7 && worst_grid <= 2e-3 && worst_resid <= 1e-8 && t < 60.0,
         detail.str(), t);
}

// ----------------------------------------------------------------- 5 and 6

struct TheoryRun {
  TrialResult res;
  double wstar_l1 = 0.0;
};

void criterion_5_and_6() {
  Timer timer;
  const int seeds = 20;
  std::vector<TheoryRun> runs(seeds);
  parallel_trials(seeds, [&](int seed) {
    Rng gt_rng(Rng::substream(5000 + seed, 0x67));
    const GroundTruth gt = gen_ground_truth(10, 3, 0.2, 0.5, gt_rng);
    SynthStream stream(gt, DesignSpec{DesignKind::Rademacher, 0.0},
                       Rng::substream(5000 + seed, 0xE11));
    AlgorithmConfig cfg;
    cfg.pc.d = 10;
    cfg.pc.k = 3;
    cfg.pc.sigma = 0.5;
    cfg.pc.delta = 0.1;
    cfg.pc.delta_S = 1.0;
    cfg.T = 200L * 200L;
    cfg.mode = Mode::Theory;
    cfg.seed = 5000 + seed;
    runs[seed].res = run_ds_oslrc(stream, cfg, &gt);
    runs[seed].wstar_l1 = gt.w_star.cwiseAbs().sum();
  });

  long total = 0, feasible = 0, gamma_viol = 0;
  long cone_viol = 0, factor2_viol = 0, band_viol_runs = 0;
  double min_gamma_margin = std::numeric_limits<double>::infinity();
  for (const TheoryRun& run : runs) {
    if (run.res.ons.band_max > 1.0 + 1e-9) ++band_viol_runs;
    for (size_t s = 0; s < run.res.what_l1.size(); ++s) {
      ++total;
      const bool accepted = run.res.what_l1[s] <= run.wstar_l1 + 1e-9;
      if (accepted) {
        ++feasible;
        if (run.res.cone_off[s] > run.res.l1_S[s] + 1e-9) ++cone_viol;
        if (run.res.l1_full[s] > 2.0 * run.res.l1_S[s] + 1e-9) ++factor2_viol;
      }
      min_gamma_margin =
          std::min(min_gamma_margin, run.res.gamma_hat_s[s] - run.res.gamma_oracle[s]);
      if (run.res.gamma_hat_s[s] < run.res.gamma_oracle[s]) ++gamma_viol;
    }
  }
  const double frac = double(feasible) / double(total);
  const double t = timer.seconds();
  {
    std::ostringstream d;
    d << "||w_hat||_1 <= ||w*||_1 on " << frac * 100.0 << "% of " << total
      << " rounds, gamma_hat >= gamma violations = " << gamma_viol
      << " (min margin " << min_gamma_margin << ")";
    report(5, "selector feasibility (theory mode)",
           frac >= 0.95 && gamma_viol == 0 && t < 300.0, d.str(), t);
  }
  {
    std::ostringstream d;
    d << "cone violations = " << cone_viol << ", factor-2 violations = " << factor2_viol
      << " on accepted rounds";
    report(6, "cone membership", cone_viol == 0 && factor2_viol == 0, d.str(), timer.seconds());
  }
  if (band_viol_runs > 0)
    std::cout << "  note: " << band_viol_runs << " theory runs exceeded the projection band\n";
}

// ------------------------------------------------------- 7, 8, 9, 10a

struct PracticalPair {
  TrialResult ds, uni;
};

AlgorithmConfig criterion7_cfg(int seed) {
  AlgorithmConfig cfg;
  cfg.pc.d = 20;
  cfg.pc.k = 4;
  cfg.pc.sigma = 0.1;
  cfg.pc.delta = 0.1;
  cfg.pc.delta_S = 1.0;
  cfg.T = 1000000;
  cfg.mode = Mode::Practical;
  cfg.c = 0.02;
  cfg.seed = 7000 + seed;
  return cfg;
}

void criterion_7_8_9_10(bool want7, bool want8, bool want9, bool want10) {
  Timer timer;
  const int pairs = 20;
  std::vector<PracticalPair> runs(pairs);
  double ons_band_max = 0.0, ons_inv_max = 0.0;
  std::mutex diag_mu;

  parallel_trials(pairs, [&](int seed) {
    Rng gt_rng(Rng::substream(7000 + seed, 0x67));
    const GroundTruth gt = gen_ground_truth(20, 4, 0.2, 0.1, gt_rng);
    const AlgorithmConfig cfg = criterion7_cfg(seed);
    {
      SynthStream stream(gt, DesignSpec{DesignKind::Rademacher, 0.0},
                         Rng::substream(7000 + seed, 0xE11));
      runs[seed].ds = run_ds_oslrc(stream, cfg, &gt);
    }
    {
      SynthStream stream(gt, DesignSpec{DesignKind::Rademacher, 0.0},
                         Rng::substream(7000 + seed, 0xE11));
      runs[seed].uni = run_uniform_baseline(stream, cfg, &gt);
    }
    std::lock_guard<std::mutex> lock(diag_mu);
    ons_band_max = std::max({ons_band_max, runs[seed].ds.ons.band_max, runs[seed].uni.ons.band_max});
    ons_inv_max =
        std::max({ons_inv_max, runs[seed].ds.ons.inv_err_max, runs[seed].uni.ons.inv_err_max});
  });

  // 7: median slope of log ||Delta_s(S)||_1 vs log s over [100, 1000], 10 seeds.
  if (want7) {
    std::vector<double> slopes;
    for (int seed = 0; seed < 10; ++seed) {
      const std::vector<double>& l1 = runs[seed].ds.l1_S;
      std::vector<double> idx(l1.size());
      std::iota(idx.begin(), idx.end(), 1.0);
      slopes.push_back(loglog_slope(idx, l1, 100, 1000));
    }
    const double med = median(slopes);
    std::ostringstream d;
    d << "median slope = " << med << " over 10 seeds (target <= -0.35)";
    report(7, "l1 error decay", med <= -0.35 && timer.seconds() < 600.0, d.str(), timer.seconds());
  }

  // 8: median Reg_t/sqrt(t) over the last decade vs the decade before.
  if (want8) {
    std::vector<double> ratios;
    for (int seed = 0; seed < 10; ++seed) {
      const std::vector<double>& reg = runs[seed].ds.regret;
      std::vector<double> early, late;
      for (long t = 10000; t < 100000; ++t) early.push_back(reg[t] / std::sqrt(double(t + 1)));
      for (long t = 100000; t < 1000000; ++t) late.push_back(reg[t] / std::sqrt(double(t + 1)));
      ratios.push_back(median(late) / median(early));
    }
    const double med = median(ratios);
    std::ostringstream d;
    d << "median Reg/sqrt(t) decade ratio = " << med << " (target <= 1.5)";
    report(8, "regret sublinearity", med <= 1.5, d.str(), timer.seconds());
  }

  // 9: paired final errors, ds-oslrc vs uniform sampling.
  if (want9) {
    int wins = 0;
    for (int seed = 0; seed < pairs; ++seed)
      if (runs[seed].ds.l1_S.back() < runs[seed].uni.l1_S.back()) ++wins;
    std::ostringstream d;
    d << wins << "/" << pairs << " paired seeds favor the adaptive sampler (target >= 14)";
    report(9, "sampling ablation", wins >= 14, d.str(), timer.seconds());
  }

  // 10: mechanics across these runs plus a standalone fixed-support ONS decay.
  if (want10) {
    std::vector<double> ratios(5);
    parallel_trials(5, [&](int seed) {
      Rng rng(Rng::substream(1100 + seed, 0x9));
      const int k = 3;
      const GroundTruth gt = gen_ground_truth(k, k, 0.2, 0.3, rng);
      SynthStream stream(gt, DesignSpec{DesignKind::UniformBox, 0.0},
                         Rng::substream(1100 + seed, 0xE11));
      const OnsParams params = ons_params(0.3, 0.1, k);
      std::vector<int> support(k);
      std::iota(support.begin(), support.end(), 0);
      OnsEpoch epoch =
          OnsEpoch::start(Eigen::VectorXd::Zero(k), support, nullptr, {}, params.rho, params.epsilon);

      const long T2 = 200000;
      std::vector<Round> rounds(T2);
      std::vector<double> yhat(T2);
      for (long t = 0; t < T2; ++t) {
        rounds[t] = stream.next();
        yhat[t] = epoch.step(rounds[t].x, rounds[t].y);
      }
      // Least-squares comparator over the full horizon.
      Eigen::MatrixXd G = Eigen::MatrixXd::Zero(k, k);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(k);
      for (const Round& r : rounds) {
        G.noalias() += r.x * r.x.transpose();
        v.noalias() += r.x * r.y;
      }
      const Eigen::VectorXd w_ls = G.ldlt().solve(v);
      double reg_half = 0.0, reg_full = 0.0, acc = 0.0;
      for (long t = 0; t < T2; ++t) {
        const double a = yhat[t] - rounds[t].y;
        const double b = w_ls.dot(rounds[t].x) - rounds[t].y;
        acc += a * a - b * b;
        if (t + 1 == T2 / 2) reg_half = acc;
      }
      reg_full = acc;
      ratios[seed] = reg_full / reg_half;
    });
    const double med_ratio = median(ratios);
    std::ostringstream d;
    d << "band max = " << ons_band_max << ", ||A A^-1 - I|| max = " << ons_inv_max
      << ", standalone Reg(2e5)/Reg(1e5) median = " << med_ratio;
    report(10, "ons mechanics",
           ons_band_max <= 1.0 + 1e-9 && ons_inv_max <= 1e-6 && med_ratio <= 1.3, d.str(),
           timer.seconds());
  }
}

// -------------------------------------------------------------------- 11

void criterion_11() {
  Timer timer;
  const int seeds = 20;
  std::vector<int> outcome(seeds, 0);  // 1 = stabilized, 0 = flipped or never hit
  parallel_trials(seeds, [&](int seed) {
    Rng gt_rng(Rng::substream(11000 + seed, 0x67));
    const GroundTruth gt = gen_ground_truth(20, 4, 0.2, 0.1, gt_rng);
    SynthStream stream(gt, DesignSpec{DesignKind::Rademacher, 0.0},
                       Rng::substream(11000 + seed, 0xE11));
    AlgorithmConfig cfg;
    cfg.pc.d = 20;
    cfg.pc.k = 4;
    cfg.pc.sigma = 0.1;
    cfg.pc.delta = 0.1;
    cfg.pc.delta_S = 1.0;
    cfg.T = 250000;  // exploration rounds up to s = 500
    cfg.mode = Mode::Practical;
    cfg.c = 0.02;
    cfg.seed = 11000 + seed;
    const TrialResult res = run_ds_oslrc(stream, cfg, &gt);

    const auto first_hit = std::find(res.support_hit.begin(), res.support_hit.end(), 1);
    if (first_hit == res.support_hit.end()) return;  // never recovered: failure
    const bool stable = std::all_of(first_hit, res.support_hit.end(),
                                    [](std::uint8_t h) { return h == 1; });
    outcome[seed] = stable ? 1 : 0;
  });
  const int stabilized = std::accumulate(outcome.begin(), outcome.end(), 0);
  std::ostringstream d;
  d << stabilized << "/" << seeds << " seeds kept S_s = S after the first hit (target >= 18)";
  report(11, "support stabilization", stabilized >= 18, d.str(), timer.seconds());
}

// -------------------------------------------------------------------- 12

void criterion_12() {
  Timer timer;
  const int seeds = 10;
  std::vector<double> slopes(seeds);
  parallel_trials(seeds, [&](int seed) {
    Rng gt_rng(Rng::substream(12000 + seed, 0x67));
    const GroundTruth gt = gen_ground_truth(20, 4, 0.2, 0.1, gt_rng);
    SynthStream stream(gt, DesignSpec{DesignKind::Rademacher, 0.0},
                       Rng::substream(12000 + seed, 0xE11));
    AlgorithmConfig cfg;
    cfg.pc.d = 20;
    cfg.pc.k = 4;
    cfg.pc.k0 = 4;
    cfg.pc.sigma = 0.1;
    cfg.pc.delta = 0.1;
    cfg.pc.delta_S = 1.0;
    cfg.pc.variant = Variant::Poslr;
    cfg.T = 50000;
    cfg.mode = Mode::Practical;
    cfg.c = 0.02;
    cfg.seed = 12000 + seed;
    const TrialResult res = run_ds_poslrc(stream, cfg, &gt);

    std::vector<double> idx(res.l1_S.size());
    std::iota(idx.begin(), idx.end(), 1.0);
    slopes[seed] = loglog_slope(idx, res.l1_S, 1000, 50000);
  });
  const double med = median(slopes);
  const double t = timer.seconds();
  std::ostringstream d;
  d << "median slope over s in [1e3, 5e4] = " << med << " across 10 seeds (target <= -0.35)";
  report(12, "ds-poslrc error decay", med <= -0.35 && t < 900.0, d.str(), t);
}

// -------------------------------------------------------------------- 13

void criterion_13() {
  Timer timer;
  Rng rng(13131);
  const int d = 10, n = 2000;
  Eigen::MatrixXd X(d, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < d; ++i) X(i, j) = double(rng.sign());
  std::vector<int> S;
  while (S.size() < 3) {
    const int i = rng.below(d);
    if (std::find(S.begin(), S.end(), i) == S.end()) S.push_back(i);
  }
  std::sort(S.begin(), S.end());

  Rng opt(13132);
  const double ident = estimate_compatibility(X, S, 1.0, opt);

  Eigen::MatrixXd Xdup = X;
  int outside = 0;
  while (std::find(S.begin(), S.end(), outside) != S.end()) ++outside;
  Xdup.row(outside) = Xdup.row(S[0]);
  Rng opt2(13133);
  const double dup = estimate_compatibility(Xdup, S, 1.0, opt2);

  std::ostringstream detail;
  detail << "identity-design estimate = " << ident << ", duplicated-column estimate = " << dup;
  report(13, "compatibility anchors", ident >= 0.95 && ident <= 1.0001 && dup <= 0.05,
         detail.str(), timer.seconds());
}

// -------------------------------------------------------------------- 14

void criterion_14() {
  Timer timer;
  const double bound = 2.0 * 3 * 0.25 + 4.0 * 3 * 0.25 * std::log(8.0 / 0.1);
  std::vector<int> ok(100, 0);
  parallel_trials(100, [&](int seed) {
    Rng rng(Rng::substream(14000 + seed, 0x67));
    const GroundTruth gt = gen_ground_truth(8, 3, 0.2, 0.5, rng);
    const int n = 200;
    Eigen::MatrixXd X(8, n);
    Eigen::VectorXd Y(n);
    SynthStream stream(gt, DesignSpec{DesignKind::Rademacher, 0.0},
                       Rng::substream(14000 + seed, 0xE11));
    for (int j = 0; j < n; ++j) {
      const Round r = stream.next();
      X.col(j) = r.x;
      Y[j] = r.y;
    }
    const Eigen::VectorXd wb = best_k_sparse(X, Y, 3);
    const double gap =
        (X.transpose() * gt.w_star - Y).squaredNorm() - (X.transpose() * wb - Y).squaredNorm();
    ok[seed] = gap <= bound ? 1 : 0;
  });
  const int passed = std::accumulate(ok.begin(), ok.end(), 0);
  std::ostringstream d;
  d << passed << "/100 trials below the bound " << bound << " (target >= 90)";
  report(14, "best k-sparse gap", passed >= 90, d.str(), timer.seconds());
}

// -------------------------------------------------------------------- 15

void criterion_15() {
  Timer timer;
  const char* config_text =
      "algorithms = ds-oslrc, uniform-baseline\n"
      "d = 10\nk = 3\nsigma = 0.5\ndelta = 0.1\ndelta_S = 1\nh_min = 0.2\n"
      "design = rademacher\nT = 2500\nmode = practical\nc = 0.05\ntrials = 3\nseed = 99\n";
  std::istringstream in1(config_text);
  const ExperimentConfig cfg = parse_config(in1);

  std::ostringstream csv1, csv2, csv3;
  write_csv(run_experiment(cfg), csv1);
  write_csv(run_experiment(cfg), csv2);
  ExperimentConfig par = cfg;
  par.jobs = 2;
  write_csv(run_experiment(par), csv3);

  const bool identical = csv1.str() == csv2.str();
  const bool parallel_identical = csv1.str() == csv3.str();
  std::ostringstream d;
  d << "repeat run byte-identical = " << (identical ? "yes" : "no")
    << ", parallel merge identical = " << (parallel_identical ? "yes" : "no");
  report(15, "determinism", identical && parallel_identical, d.str(), timer.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc + 1; ++i) {
    if (i < argc && std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) g_only = std::atoi(argv[i + 1]);
  }

  if (wanted(1) || wanted(2)) criterion_1_and_2();
  if (wanted(3)) criterion_3();
  if (wanted(4)) criterion_4();
  if (wanted(5) || wanted(6)) criterion_5_and_6();
  if (wanted(7) || wanted(8) || wanted(9) || wanted(10))
    criterion_7_8_9_10(wanted(7), wanted(8), wanted(9), wanted(10));
  if (wanted(11)) criterion_11();
  if (wanted(12)) criterion_12();
  if (wanted(13)) criterion_13();
  if (wanted(14)) criterion_14();
  if (wanted(15)) criterion_15();

  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << g_failures << " acceptance criteria failed" << std::endl;
  return 1;
}
