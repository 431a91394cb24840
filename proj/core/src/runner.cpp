#include "oslr/runner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oslr/dantzig.hpp"
#include "oslr/estimation.hpp"
#include "oslr/sampling.hpp"

namespace oslr {

const char* to_string(Algo a) {
  switch (a) {
    case Algo::DsOslrc: return "ds-oslrc";
    case Algo::DsPoslrc: return "ds-poslrc";
    case Algo::UniformBaseline: return "uniform-baseline";
    case Algo::FullInfoOracle: return "full-info-oracle";
  }
  return "?";
}

std::optional<Algo> algo_from_string(const std::string& name) {
  if (name == "ds-oslrc") return Algo::DsOslrc;
  if (name == "ds-poslrc") return Algo::DsPoslrc;
  if (name == "uniform-baseline") return Algo::UniformBaseline;
  if (name == "full-info-oracle") return Algo::FullInfoOracle;
  return std::nullopt;
}

void AlgorithmConfig::validate() const {
  pc.validate();
  if (T < 4) throw std::invalid_argument("AlgorithmConfig: T must be at least 4");
  if (mode == Mode::Practical && (c <= 0.0 || c > 1.0))
    throw std::invalid_argument("AlgorithmConfig: practical c must lie in (0, 1]");
}

std::vector<int> select_support(const Eigen::VectorXd& w_hat, int k) {
  const int d = static_cast<int>(w_hat.size());
  if (k > d) throw std::invalid_argument("select_support: k > d");
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double ma = std::abs(w_hat[a]), mb = std::abs(w_hat[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  std::vector<int> s(idx.begin(), idx.begin() + k);
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<double> compute_regret(const std::vector<double>& yhat, const std::vector<double>& y,
                                   const std::vector<double>& comparator) {
  if (yhat.size() != y.size() || y.size() != comparator.size())
    throw std::invalid_argument("compute_regret: series length mismatch");
  std::vector<double> reg(yhat.size());
  double acc = 0.0;
  for (size_t t = 0; t < yhat.size(); ++t) {
    const double a = yhat[t] - y[t];
    const double b = comparator[t] - y[t];
    acc += a * a - b * b;
    reg[t] = acc;
  }
  return reg;
}

namespace {

// Counted read access to one instance; one per round and phase.
class AttributeReader {
 public:
  AttributeReader(const Eigen::VectorXd& x, int budget, std::vector<int>* record)
      : x_(x), budget_(budget), record_(record) {}

  double get(int i) {
    ++reads_;
    if (record_) record_->push_back(i);
    return x_[i];
  }

  int reads() const { return reads_; }
  bool over_budget() const { return reads_ > budget_; }

 private:
  const Eigen::VectorXd& x_;
  int budget_;
  int reads_ = 0;
  std::vector<int>* record_;
};

struct GammaAudit {
  // Squared l1 history sum: sum over tau=1..s of ||Delta_{tau-1}(S)||_1^2.
  double sum_sq = 0.0;
  double last_delta_s = 0.0;
};

bool is_square(long t, long& root) {
  const long r = static_cast<long>(std::sqrt(double(t)));
  for (long c = std::max(1L, r - 1); c <= r + 1; ++c)
    if (c * c == t) {
      root = c;
      return true;
    }
  return false;
}

TrialResult run_oslr_family(Stream& stream, const AlgorithmConfig& cfg_in, const GroundTruth* gt,
                            bool uniform_q, bool full_info) {
  AlgorithmConfig cfg = cfg_in;
  cfg.pc.variant = Variant::Oslr;
  cfg.validate();
  const ProblemConstants& pc = cfg.pc;
  const int d = pc.d, k = pc.k;

  ScheduleConstants sc = derive_constants(pc);
  if (cfg.mode == Mode::Practical) sc = practical_scale(sc, cfg.c);
  NuSequence nu_seq(sc, pc);
  const OnsParams ons = ons_params(pc.sigma, pc.delta, k);

  Rng algo_rng(Rng::substream(cfg.seed, 0xA16));

  Eigen::VectorXd w_hat = Eigen::VectorXd::Constant(d, 1.0 / d);
  SelectorAccumulators acc(d);
  std::vector<int> S_prev(k);
  std::iota(S_prev.begin(), S_prev.end(), 0);
  std::optional<OnsEpoch> epoch;
  std::vector<int> S_cur = S_prev;

  TrialResult res;
  GammaAudit audit;
  if (gt) {
    res.regret.reserve(cfg.T);
    audit.last_delta_s = l1_errors(w_hat, *gt).on_support;
  }

  const DantzigOptions lp_opts{cfg.lp_feas_tol, cfg.lp_max_iters};
  double cum_regret = 0.0;

  for (long t = 1; t <= cfg.T; ++t) {
    const Round round = stream.next();
    double yhat = 0.0;
    long s = 0;
    RoundLog log;
    if (cfg.record_rounds) {
      log.t = t;
      log.y = round.y;
    }

    if (is_square(t, s)) {
      // Exploration round: sample, estimate, re-solve the selector.
      res.explore_rounds = s;
      const SamplingWeights q =
          uniform_q ? SamplingWeights{Eigen::VectorXd::Constant(d, 1.0 / d)}
                    : normalize_weights(w_hat);

      if (full_info) {
        yhat = w_hat.dot(round.x);
        acc.add(round.x, round.x * round.x.transpose(), round.y);
      } else {
        const FeatureSet B = sample_feature_set(q, k, algo_rng);
        std::vector<double> x_on_b;
        AttributeReader reader(round.x, k, cfg.record_rounds ? &log.observed : nullptr);
        x_on_b.reserve(k);
        yhat = 0.0;
        for (int i : B.indices) {
          const double xi = reader.get(i);
          x_on_b.push_back(xi);
          yhat += w_hat[i] * xi;
        }
        res.audit.max_explore_reads = std::max(res.audit.max_explore_reads, reader.reads());
        if (reader.over_budget()) ++res.audit.violations;

        const SamplingLaw law(q, k);
        acc.add(estimate_instance(x_on_b, B, law), estimate_outer(x_on_b, B, law), round.y);
      }

      const double nu_s = nu_seq.next();
      const double gh = cfg.gamma_override ? *cfg.gamma_override : gamma_hat(s, nu_s, sc, pc);
      if (gt) {
        audit.sum_sq += audit.last_delta_s * audit.last_delta_s;
        res.gamma_oracle.push_back(theoretical_gamma(s, audit.sum_sq, sc, pc));
      }
      res.gamma_hat_s.push_back(gh);

      const DantzigProblem prob(acc.b / double(acc.s), acc.H / double(acc.s), gh);
      const DantzigSolution sol = solve_dantzig(prob, lp_opts);
      if (sol.ok()) {
        w_hat = sol.w;
      } else {
        ++res.lp_infeasible;  // threshold too tight: keep the previous estimate
      }

      S_cur = select_support(w_hat, k);
      const OnsEpoch* prev = epoch.has_value() ? &*epoch : nullptr;
      epoch = OnsEpoch::start(w_hat, S_cur, prev, S_prev, ons.rho, ons.epsilon);
      S_prev = S_cur;

      if (gt) {
        const L1Errors e = l1_errors(w_hat, *gt);
        res.l1_S.push_back(e.on_support);
        res.l1_full.push_back(e.full_l1);
        res.l2_full.push_back(e.full_l2);
        res.what_l1.push_back(w_hat.cwiseAbs().sum());
        res.cone_off.push_back(e.full_l1 - e.on_support);
        res.support_hit.push_back(S_cur == gt->support ? 1 : 0);
        audit.last_delta_s = e.on_support;
      }
      if (cfg.record_rounds) log.explore = true;
    } else {
      // Exploitation round: projected ONS on the current support.
      AttributeReader reader(round.x, k, cfg.record_rounds ? &log.observed : nullptr);
      Eigen::VectorXd x_s(static_cast<long>(S_cur.size()));
      for (size_t a = 0; a < S_cur.size(); ++a) x_s[static_cast<long>(a)] = reader.get(S_cur[a]);
      res.audit.max_exploit_reads = std::max(res.audit.max_exploit_reads, reader.reads());
      if (reader.over_budget()) ++res.audit.violations;
      yhat = epoch->step(x_s, round.y);
    }

    if (gt) {
      const double a = yhat - round.y;
      const double b = gt->w_star.dot(round.x) - round.y;
      cum_regret += a * a - b * b;
      res.regret.push_back(cum_regret);
    }
    if (cfg.record_rounds) {
      log.yhat = yhat;
      log.sqloss = (yhat - round.y) * (yhat - round.y);
      log.support = S_cur;
      if (gt && !res.l1_S.empty()) log.l1_S = res.l1_S.back();
      res.logs.push_back(std::move(log));
    }
  }

  if (epoch) res.ons = epoch->diag;
  return res;
}

}  // namespace

TrialResult run_ds_oslrc(Stream& stream, const AlgorithmConfig& cfg, const GroundTruth* gt) {
  return run_oslr_family(stream, cfg, gt, /*uniform_q=*/false, /*full_info=*/false);
}

TrialResult run_uniform_baseline(Stream& stream, const AlgorithmConfig& cfg,
                                 const GroundTruth* gt) {
  return run_oslr_family(stream, cfg, gt, /*uniform_q=*/true, /*full_info=*/false);
}

TrialResult run_full_info_oracle(Stream& stream, const AlgorithmConfig& cfg,
                                 const GroundTruth* gt) {
  return run_oslr_family(stream, cfg, gt, /*uniform_q=*/false, /*full_info=*/true);
}

TrialResult run_ds_poslrc(Stream& stream, const AlgorithmConfig& cfg, const GroundTruth* gt) {
  AlgorithmConfig checked = cfg;
  checked.pc.variant = Variant::Poslr;
  checked.validate();
  const ProblemConstants& pc = checked.pc;
  const int d = pc.d, k = pc.k, k0 = pc.k0;
  const int dp = pc.d_prime();

  ScheduleConstants sc = derive_constants(pc);
  if (checked.mode == Mode::Practical) sc = practical_scale(sc, checked.c);
  NuSequence nu_seq(sc, pc);

  Rng algo_rng(Rng::substream(checked.seed, 0xA16));

  Eigen::VectorXd w_hat = Eigen::VectorXd::Constant(d, 1.0 / d);
  SelectorAccumulators acc(d);
  std::vector<int> S_prev(k);
  std::iota(S_prev.begin(), S_prev.end(), 0);

  TrialResult res;
  GammaAudit audit;
  if (gt) {
    res.regret.reserve(checked.T);
    audit.last_delta_s = l1_errors(w_hat, *gt).on_support;
  }
  const DantzigOptions lp_opts{checked.lp_feas_tol, checked.lp_max_iters};
  double cum_regret = 0.0;

  for (long s = 1; s <= checked.T; ++s) {
    const Round round = stream.next();
    RoundLog log;
    if (checked.record_rounds) {
      log.t = s;
      log.y = round.y;
      log.explore = true;
    }

    // Predict from the deterministic support, before the label.
    AttributeReader pre(round.x, k, checked.record_rounds ? &log.observed : nullptr);
    double yhat = 0.0;
    for (int i : S_prev) yhat += w_hat[i] * pre.get(i);
    res.audit.max_prelabel_reads = std::max(res.audit.max_prelabel_reads, pre.reads());
    if (pre.over_budget()) ++res.audit.violations;

    // Label revealed; sample k0 additional attributes from the complement.
    std::vector<int> complement;
    complement.reserve(dp);
    {
      std::vector<bool> fixed(d, false);
      for (int i : S_prev) fixed[i] = true;
      for (int i = 0; i < d; ++i)
        if (!fixed[i]) complement.push_back(i);
    }
    Eigen::VectorXd w_comp(dp);
    for (int a = 0; a < dp; ++a) w_comp[a] = w_hat[complement[a]];
    const SamplingWeights qbar = normalize_weights(w_comp);
    const FeatureSet Bp = sample_feature_set(qbar, k0, algo_rng);

    FeatureSet B;
    B.budget = k + k0;
    B.indices = S_prev;
    for (int a : Bp.indices) B.indices.push_back(complement[a]);
    std::sort(B.indices.begin(), B.indices.end());

    AttributeReader post(round.x, k0, checked.record_rounds ? &log.observed : nullptr);
    std::vector<double> x_on_b(B.indices.size());
    {
      std::vector<bool> fixed(d, false);
      for (int i : S_prev) fixed[i] = true;
      for (size_t a = 0; a < B.indices.size(); ++a) {
        const int i = B.indices[a];
        x_on_b[a] = fixed[i] ? round.x[i] : post.get(i);
      }
    }
    res.audit.max_postlabel_reads = std::max(res.audit.max_postlabel_reads, post.reads());
    if (post.over_budget()) ++res.audit.violations;

    const AugmentedLaw law = poslr_law(S_prev, qbar, k0, d);
    acc.add(estimate_instance(x_on_b, B, law), estimate_outer(x_on_b, B, law), round.y);

    const double nu_s = nu_seq.next();
    const double gh = checked.gamma_override ? *checked.gamma_override : gamma_hat(s, nu_s, sc, pc);
    if (gt) {
      audit.sum_sq += audit.last_delta_s * audit.last_delta_s;
      res.gamma_oracle.push_back(theoretical_gamma(s, audit.sum_sq, sc, pc));
    }
    res.gamma_hat_s.push_back(gh);

    const DantzigProblem prob(acc.b / double(acc.s), acc.H / double(acc.s), gh);
    const DantzigSolution sol = solve_dantzig(prob, lp_opts);
    if (sol.ok()) {
      w_hat = sol.w;
    } else {
      ++res.lp_infeasible;
    }
    S_prev = select_support(w_hat, k);
    res.explore_rounds = s;

    if (gt) {
      const L1Errors e = l1_errors(w_hat, *gt);
      res.l1_S.push_back(e.on_support);
      res.l1_full.push_back(e.full_l1);
      res.l2_full.push_back(e.full_l2);
      res.what_l1.push_back(w_hat.cwiseAbs().sum());
      res.cone_off.push_back(e.full_l1 - e.on_support);
      res.support_hit.push_back(S_prev == gt->support ? 1 : 0);
      audit.last_delta_s = e.on_support;

      const double a = yhat - round.y;
      const double b = gt->w_star.dot(round.x) - round.y;
      cum_regret += a * a - b * b;
      res.regret.push_back(cum_regret);
    }
    if (checked.record_rounds) {
      log.yhat = yhat;
      log.sqloss = (yhat - round.y) * (yhat - round.y);
      log.support = S_prev;
      if (gt) log.l1_S = res.l1_S.back();
      res.logs.push_back(std::move(log));
    }
  }
  return res;
}

TrialResult run_algorithm(Algo algo, Stream& stream, const AlgorithmConfig& cfg,
                          const GroundTruth* gt) {
  switch (algo) {
    case Algo::DsOslrc: return run_ds_oslrc(stream, cfg, gt);
    case Algo::DsPoslrc: return run_ds_poslrc(stream, cfg, gt);
    case Algo::UniformBaseline: return run_uniform_baseline(stream, cfg, gt);
    case Algo::FullInfoOracle: return run_full_info_oracle(stream, cfg, gt);
  }
  throw std::invalid_argument("run_algorithm: unknown algorithm");
}

}  // namespace oslr
