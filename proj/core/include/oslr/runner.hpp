#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oslr/ons.hpp"
#include "oslr/schedule.hpp"
#include "oslr/synth.hpp"

namespace oslr {

enum class Algo { DsOslrc, DsPoslrc, UniformBaseline, FullInfoOracle };

const char* to_string(Algo a);
std::optional<Algo> algo_from_string(const std::string& name);

enum class Mode { Theory, Practical };

struct AlgorithmConfig {
  ProblemConstants pc;
  long T = 0;
  Mode mode = Mode::Theory;
  double c = 1.0;  // practical-mode scale on gamma_hat
  std::uint64_t seed = 1;
  bool record_rounds = false;
  double lp_feas_tol = 1e-8;
  long lp_max_iters = 0;
  std::optional<double> gamma_override;  // fixed gamma instead of the schedule

  void validate() const;  // throws on T < 4 or invalid constants
};

struct RoundLog {
  long t = 0;
  bool explore = false;
  std::vector<int> observed;
  double yhat = 0.0, y = 0.0, sqloss = 0.0;
  std::vector<int> support;
  double l1_S = -1.0;  // set when ground truth is attached
};

/// Attribute-access accounting for the observation protocol. The runners
/// read instances only through counted accessors; `violations` counts rounds
/// whose reads exceeded the budget and must stay zero.
struct AuditSummary {
  long violations = 0;
  int max_explore_reads = 0;   // OSLR explore rounds (budget k)
  int max_exploit_reads = 0;   // OSLR exploit rounds (budget k)
  int max_prelabel_reads = 0;  // POSLR, before the label (budget k)
  int max_postlabel_reads = 0;  // POSLR, after the label (budget k0)
};

struct TrialResult {
  // Per-round, cumulative; length T. Only filled when ground truth is known.
  std::vector<double> regret;

  // Per exploration round (length floor(sqrt(T)) for OSLR, T for POSLR).
  std::vector<double> l1_S, l1_full, l2_full;
  std::vector<double> what_l1;       // ||w_hat_s||_1
  std::vector<double> cone_off;      // ||Delta_s(S^c)||_1
  std::vector<double> gamma_hat_s;   // threshold actually used
  std::vector<double> gamma_oracle;  // ground-truth gamma_s (unscaled)
  std::vector<std::uint8_t> support_hit;

  long lp_infeasible = 0;
  long explore_rounds = 0;
  AuditSummary audit;
  OnsDiagnostics ons;
  std::vector<RoundLog> logs;  // only when record_rounds
};

/// Top-k coordinates by magnitude; ties go to the lowest index. Sorted.
std::vector<int> select_support(const Eigen::VectorXd& w_hat, int k);

/// Cumulative regret series from per-round predictions, labels and the
/// comparator's predictions.
std::vector<double> compute_regret(const std::vector<double>& yhat, const std::vector<double>& y,
                                   const std::vector<double>& comparator);

TrialResult run_ds_oslrc(Stream& stream, const AlgorithmConfig& cfg,
                         const GroundTruth* gt = nullptr);
TrialResult run_ds_poslrc(Stream& stream, const AlgorithmConfig& cfg,
                          const GroundTruth* gt = nullptr);
TrialResult run_uniform_baseline(Stream& stream, const AlgorithmConfig& cfg,
                                 const GroundTruth* gt = nullptr);
TrialResult run_full_info_oracle(Stream& stream, const AlgorithmConfig& cfg,
                                 const GroundTruth* gt = nullptr);

TrialResult run_algorithm(Algo algo, Stream& stream, const AlgorithmConfig& cfg,
                          const GroundTruth* gt = nullptr);

}  // namespace oslr
