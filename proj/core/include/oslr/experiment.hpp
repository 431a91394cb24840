#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oslr/runner.hpp"

namespace oslr {

/// Raised on malformed experiment configs; the message names the bad key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Experiment description parsed from a flat `key = value` text file.
/// Unknown keys are errors. See parse_config for the key list.
struct ExperimentConfig {
  std::vector<Algo> algorithms{Algo::DsOslrc};
  int d = 10, k = 3, k0 = 0;
  double sigma = 0.1, delta = 0.1;
  double delta_S = 1.0;
  bool delta_S_auto = false;  // estimate from a stream prefix, times 0.9
  double h_min = 0.2;
  DesignSpec design;
  long T = 10000;
  Mode mode = Mode::Theory;
  double c = 1.0;
  int trials = 1;
  std::uint64_t seed = 1;
  std::string out_dir;
  int jobs = 1;
  long regret_stride = 1;  // thin the per-round regret series in the CSV
  double slope_lo = 0.0, slope_hi = 0.0;  // log-log fit window; 0 -> auto
  bool record_rounds = false;

  ProblemConstants problem_constants(Variant variant) const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

struct ResultRow {
  int trial = 0;
  std::string algorithm;
  long index = 0;
  std::string metric;
  double value = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

/// Runs every (algorithm, trial) pair, deterministically per trial index.
/// Trials run in parallel when cfg.jobs > 1; the merged table is identical
/// either way.
ResultTable run_experiment(const ExperimentConfig& cfg);

/// CSV schema: header `trial,algorithm,index,metric,value`; values with 17
/// significant digits so 64-bit floats round-trip exactly.
void write_csv(const ResultTable& table, std::ostream& os);
ResultTable read_csv(std::istream& in);

/// Least-squares slope of log(value) vs log(index) over index in [lo, hi].
/// Non-positive values are skipped. Returns NaN when under two points.
double loglog_slope(std::span<const double> index, std::span<const double> value, double lo,
                    double hi);

/// One SVG per (algorithm, metric in {l1_error_S, regret}): median across
/// trials with an interquartile band, log-log for the error plot. The error
/// plot carries a fitted-slope annotation.
void emit_plots(const ResultTable& table, const std::string& out_dir, double slope_lo = 0.0,
                double slope_hi = 0.0);

/// Labeled `name = value` lines for every derived constant of the config.
std::string format_constants(const ExperimentConfig& cfg);

}  // namespace oslr
