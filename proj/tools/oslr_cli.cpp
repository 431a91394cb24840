#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "oslr/experiment.hpp"
#include "oslr/sampling.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::string default_out_dir() {
  const char* env = std::getenv("OSLR_OUT_DIR");
  return env ? env : "oslr-out";
}

int cmd_run(const std::string& config_path, const std::string& out_override, int jobs_override) {
  oslr::ExperimentConfig cfg = oslr::parse_config_file(config_path);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (cfg.out_dir.empty()) cfg.out_dir = default_out_dir();
  if (jobs_override > 0) cfg.jobs = jobs_override;

  const oslr::ResultTable table = oslr::run_experiment(cfg);
  std::cout << "wrote " << cfg.out_dir << "/results.csv (" << table.rows.size() << " rows)\n";
  return kExitOk;
}

int cmd_constants(const std::string& config_path) {
  const oslr::ExperimentConfig cfg = oslr::parse_config_file(config_path);
  std::cout << oslr::format_constants(cfg);
  return kExitOk;
}

int cmd_plot(const std::string& csv_path, const std::string& out_dir) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open csv file '" + csv_path + "'");
  const oslr::ResultTable table = oslr::read_csv(in);
  oslr::emit_plots(table, out_dir);
  std::cout << "plots written to " << out_dir << "\n";
  return kExitOk;
}

int cmd_probe_sampling(int d, int k, const std::string& q_csv) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(d, 1.0 / d);
  if (!q_csv.empty()) {
    std::stringstream ss(q_csv);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
      if (i >= d) throw oslr::ConfigError("--q has more than d entries");
      w[i++] = std::stod(item);
    }
    if (i != d) throw oslr::ConfigError("--q must list exactly d entries");
  }
  const oslr::SamplingWeights q = oslr::normalize_weights(w);

  const bool enumerable = d <= 8;
  oslr::InclusionTables tables;
  if (enumerable) tables = oslr::enumerate_distribution(q, k);

  // 1-based attribute indices on output.
  std::printf("# inclusion probabilities, d=%d k=%d%s\n", d, k,
              enumerable ? "" : " (enumeration skipped: d > 8)");
  std::printf("%-10s %-22s %s\n", "i", "closed_form", enumerable ? "enumerated" : "");
  for (int i = 0; i < d; ++i) {
    std::printf("%-10d %-22.15g", i + 1, oslr::p_single(q, k, i));
    if (enumerable) std::printf(" %.15g", tables.single[i]);
    std::printf("\n");
  }
  std::printf("%-10s %-22s %s\n", "i,j", "closed_form", enumerable ? "enumerated" : "");
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      std::printf("%d,%-8d %-22.15g", i + 1, j + 1, oslr::p_pair(q, k, i, j));
      if (enumerable) std::printf(" %.15g", tables.pair(i, j));
      std::printf("\n");
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online sparse linear regression experiment harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, csv_path, q_csv;
  int jobs = 0, d = 0, k = 0;

  CLI::App* run = app.add_subcommand("run", "run an experiment config and write CSV results");
  run->add_option("config", config_path, "experiment config file")->required();
  run->add_option("--out", out_dir, "output directory (default $OSLR_OUT_DIR or ./oslr-out)");
  run->add_option("--jobs", jobs, "parallel trial workers");

  CLI::App* constants = app.add_subcommand("constants", "print the derived schedule constants");
  constants->add_option("config", config_path, "experiment config file")->required();

  CLI::App* plot = app.add_subcommand("plot", "render SVG plots from a results CSV");
  plot->add_option("csv", csv_path, "results CSV produced by `run`")->required();
  plot->add_option("outdir", out_dir, "output directory for SVG files")->required();

  CLI::App* probe = app.add_subcommand(
      "probe-sampling", "print closed-form vs enumerated inclusion probabilities");
  probe->add_option("d", d, "attribute count")->required();
  probe->add_option("k", k, "observation budget")->required();
  probe->add_option("--q", q_csv, "comma-separated sampling weights (default uniform)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, jobs);
    if (constants->parsed()) return cmd_constants(config_path);
    if (plot->parsed()) return cmd_plot(csv_path, out_dir);
    if (probe->parsed()) return cmd_probe_sampling(d, k, q_csv);
  } catch (const oslr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
