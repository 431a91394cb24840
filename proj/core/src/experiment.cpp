#include "oslr/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

namespace oslr {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_num(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse number from '" + v + "'");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  const double x = parse_num(key, v);
  if (x != std::floor(x)) throw ConfigError("config key '" + key + "': expected an integer");
  return static_cast<long>(x);
}

}  // namespace

ProblemConstants ExperimentConfig::problem_constants(Variant variant) const {
  ProblemConstants pc;
  pc.d = d;
  pc.k = k;
  pc.k0 = k0;
  pc.sigma = sigma;
  pc.delta = delta;
  pc.delta_S = delta_S;
  pc.variant = variant;
  return pc;
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string val = trim(stripped.substr(eq + 1));

    if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const std::string& name : split(val, ',')) {
        const auto a = algo_from_string(name);
        if (!a) throw ConfigError("config key 'algorithms': unknown algorithm '" + name + "'");
        cfg.algorithms.push_back(*a);
      }
      if (cfg.algorithms.empty()) throw ConfigError("config key 'algorithms': empty list");
    } else if (key == "d") {
      cfg.d = static_cast<int>(parse_int(key, val));
    } else if (key == "k") {
      cfg.k = static_cast<int>(parse_int(key, val));
    } else if (key == "k0") {
      cfg.k0 = static_cast<int>(parse_int(key, val));
    } else if (key == "sigma") {
      cfg.sigma = parse_num(key, val);
    } else if (key == "delta") {
      cfg.delta = parse_num(key, val);
    } else if (key == "delta_S") {
      if (val == "auto") {
        cfg.delta_S_auto = true;
      } else {
        cfg.delta_S = parse_num(key, val);
      }
    } else if (key == "h_min") {
      cfg.h_min = parse_num(key, val);
    } else if (key == "design") {
      if (val == "rademacher") cfg.design.kind = DesignKind::Rademacher;
      else if (val == "uniform-box") cfg.design.kind = DesignKind::UniformBox;
      else if (val == "correlated-gaussian-clipped")
        cfg.design.kind = DesignKind::CorrelatedGaussianClipped;
      else throw ConfigError("config key 'design': unknown design '" + val + "'");
    } else if (key == "rho_x") {
      cfg.design.rho_x = parse_num(key, val);
    } else if (key == "T") {
      cfg.T = parse_int(key, val);
    } else if (key == "mode") {
      if (val == "theory") cfg.mode = Mode::Theory;
      else if (val == "practical") cfg.mode = Mode::Practical;
      else throw ConfigError("config key 'mode': expected 'theory' or 'practical'");
    } else if (key == "c") {
      cfg.c = parse_num(key, val);
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_int(key, val));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, val));
    } else if (key == "out_dir") {
      cfg.out_dir = val;
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(parse_int(key, val));
    } else if (key == "regret_stride") {
      cfg.regret_stride = parse_int(key, val);
    } else if (key == "slope_lo") {
      cfg.slope_lo = parse_num(key, val);
    } else if (key == "slope_hi") {
      cfg.slope_hi = parse_num(key, val);
    } else if (key == "record_rounds") {
      cfg.record_rounds = parse_int(key, val) != 0;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (cfg.T < 4) throw ConfigError("config key 'T': must be at least 4");
  if (cfg.trials < 1) throw ConfigError("config key 'trials': must be at least 1");
  if (cfg.regret_stride < 1) throw ConfigError("config key 'regret_stride': must be at least 1");
  if (cfg.jobs < 1) throw ConfigError("config key 'jobs': must be at least 1");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

namespace {

struct TrialSeeds {
  std::uint64_t gt, env, algo;
};

TrialSeeds trial_seeds(std::uint64_t base, int trial) {
  const std::uint64_t mixed = Rng::substream(base, static_cast<std::uint64_t>(trial));
  return {Rng::substream(mixed, 0x67), Rng::substream(mixed, 0xE11), mixed};
}

struct TrialOutput {
  std::string algo_name;
  int trial = 0;
  TrialResult result;
};

TrialOutput run_one(const ExperimentConfig& cfg, Algo algo, int trial) {
  const TrialSeeds seeds = trial_seeds(cfg.seed, trial);
  Rng gt_rng(seeds.gt);
  const GroundTruth gt = gen_ground_truth(cfg.d, cfg.k, cfg.h_min, cfg.sigma, gt_rng);

  const Variant variant = algo == Algo::DsPoslrc ? Variant::Poslr : Variant::Oslr;
  AlgorithmConfig acfg;
  acfg.pc = cfg.problem_constants(variant);
  acfg.T = cfg.T;
  acfg.mode = cfg.mode;
  acfg.c = cfg.c;
  acfg.seed = seeds.algo;
  acfg.record_rounds = cfg.record_rounds;

  if (cfg.delta_S_auto) {
    SynthStream prefix(gt, cfg.design, Rng::substream(seeds.env, 0xCA11));
    const long n = 2000;
    Eigen::MatrixXd X(cfg.d, n);
    for (long t = 0; t < n; ++t) X.col(t) = prefix.next().x;
    Rng opt_rng(Rng::substream(seeds.env, 0x0B7));
    acfg.pc.delta_S = 0.9 * std::sqrt(estimate_compatibility(X, gt.support, 1.0, opt_rng));
  }

  SynthStream stream(gt, cfg.design, seeds.env);
  TrialOutput out;
  out.algo_name = to_string(algo);
  out.trial = trial;
  out.result = run_algorithm(algo, stream, acfg, &gt);
  return out;
}

void append_rows(ResultTable& table, const ExperimentConfig& cfg, const TrialOutput& t) {
  const auto push = [&](long index, const char* metric, double value) {
    table.rows.push_back({t.trial, t.algo_name, index, metric, value});
  };
  const TrialResult& r = t.result;
  for (size_t s = 0; s < r.l1_S.size(); ++s) {
    const long idx = static_cast<long>(s) + 1;
    push(idx, "l1_error_S", r.l1_S[s]);
    push(idx, "l1_error", r.l1_full[s]);
    push(idx, "l2_error", r.l2_full[s]);
    push(idx, "support_match", r.support_hit[s]);
    push(idx, "what_l1", r.what_l1[s]);
    push(idx, "gamma_hat", r.gamma_hat_s[s]);
  }
  for (size_t i = 0; i < r.regret.size(); ++i) {
    const long tt = static_cast<long>(i) + 1;
    if (tt % cfg.regret_stride == 0 || tt == static_cast<long>(r.regret.size()))
      push(tt, "regret", r.regret[i]);
  }
  push(0, "lp_infeasible_count", static_cast<double>(r.lp_infeasible));
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg) {
  std::vector<std::pair<Algo, int>> units;
  for (const Algo a : cfg.algorithms)
    for (int trial = 0; trial < cfg.trials; ++trial) units.emplace_back(a, trial);

  std::vector<TrialOutput> outputs(units.size());
  if (cfg.jobs <= 1) {
    for (size_t u = 0; u < units.size(); ++u)
      outputs[u] = run_one(cfg, units[u].first, units[u].second);
  } else {
    std::atomic<size_t> next{0};
    const int workers = std::min<int>(cfg.jobs, static_cast<int>(units.size()));
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      futs.push_back(std::async(std::launch::async, [&]() {
        while (true) {
          const size_t u = next.fetch_add(1);
          if (u >= units.size()) return;
          outputs[u] = run_one(cfg, units[u].first, units[u].second);
        }
      }));
    }
    for (auto& f : futs) f.get();
  }

  ResultTable table;
  for (const TrialOutput& t : outputs) append_rows(table, cfg, t);
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
                     if (a.trial != b.trial) return a.trial < b.trial;
                     if (a.index != b.index) return a.index < b.index;
                     return a.metric < b.metric;
                   });

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream csv(cfg.out_dir + "/results.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("run_experiment: cannot write to '" + cfg.out_dir + "'");
    write_csv(table, csv);
  }
  return table;
}

void write_csv(const ResultTable& table, std::ostream& os) {
  os << "trial,algorithm,index,metric,value\n";
  char buf[64];
  for (const ResultRow& r : table.rows) {
    std::snprintf(buf, sizeof(buf), "%.17g", r.value);
    os << r.trial << ',' << r.algorithm << ',' << r.index << ',' << r.metric << ',' << buf << '\n';
  }
}

ResultTable read_csv(std::istream& in) {
  ResultTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty input");
  if (trim(line) != "trial,algorithm,index,metric,value")
    throw std::runtime_error("read_csv: unexpected header");
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto parts = split(line, ',');
    if (parts.size() != 5) throw std::runtime_error("read_csv: malformed row '" + line + "'");
    ResultRow r;
    r.trial = static_cast<int>(std::stol(parts[0]));
    r.algorithm = parts[1];
    r.index = std::stol(parts[2]);
    r.metric = parts[3];
    r.value = std::stod(parts[4]);
    table.rows.push_back(std::move(r));
  }
  return table;
}

double loglog_slope(std::span<const double> index, std::span<const double> value, double lo,
                    double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n = 0;
  for (size_t i = 0; i < index.size() && i < value.size(); ++i) {
    if (index[i] < lo || index[i] > hi || value[i] <= 0.0 || index[i] <= 0.0) continue;
    const double x = std::log(index[i]);
    const double y = std::log(value[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = double(n) * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (double(n) * sxy - sx * sy) / denom;
}

std::string format_constants(const ExperimentConfig& cfg) {
  const bool poslr = std::any_of(cfg.algorithms.begin(), cfg.algorithms.end(),
                                 [](Algo a) { return a == Algo::DsPoslrc; });
  const Variant variant = poslr ? Variant::Poslr : Variant::Oslr;
  ProblemConstants pc = cfg.problem_constants(variant);
  const ScheduleConstants sc = derive_constants(pc);
  const OnsParams op = ons_params(cfg.sigma, cfg.delta, cfg.k);

  std::ostringstream os;
  char buf[64];
  const auto line = [&](const char* name, double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    os << name << " = " << buf << "\n";
  };
  line("g", sc.g);
  line("mu1", sc.mu1);
  line("mu2", sc.mu2);
  line("s0", sc.s0);
  line("s1", sc.s1);
  line("a1", sc.a1);
  line("a2", sc.a2);
  line("a3", sc.a3);
  line("a4", sc.a4);
  line("a5", sc.a5);
  line("Y_delta", op.Y_delta);
  line("rho", op.rho);
  line("epsilon", op.epsilon);
  return os.str();
}

}  // namespace oslr
