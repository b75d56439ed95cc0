// Copyright 2026 The causalmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/app.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>
#include <utility>

#include <CLI11.hpp>
#include <unistd.h>

#include "causalmatch/domains.h"
#include "causalmatch/ipm.h"
#include "causalmatch/sem.h"

namespace causalmatch::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> ParseDoubleList(const std::string& text,
                                    const std::string& flag) {
  std::vector<double> out;
  for (const std::string& item : SplitList(text)) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(v)) {
      throw ConfigError(flag + ": '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(flag + " needs at least one value");
  return out;
}

// Keeps free-text fields from breaking the CSV layout.
std::string CsvSafe(std::string s) {
  std::replace_if(
      s.begin(), s.end(),
      [](char c) { return c == ',' || c == '\n' || c == '\r' || c == '"'; },
      ' ');
  return s;
}

void ParallelFor(int count, int jobs, const std::function<void(int)>& fn) {
  const int workers = std::clamp(jobs, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

void PrepareOutputDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("cannot create output directory '" + dir.string() +
                      "'");
  }
}

// Runs `writer` against a temporary sibling of `path`, then renames it over
// `path`; the temporary is removed if anything fails.
void CommitAtomically(const std::filesystem::path& path,
                      const std::function<void(const std::string&)>& writer) {
  const std::filesystem::path tmp =
      path.string() + ".tmp." + std::to_string(::getpid());
  try {
    writer(tmp.string());
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

struct TrainFlags {
  std::string dataset;
  std::string anchor;
  std::string drop;
  std::string out = "causalmatch_out";
  std::string mode = "sequential";
  std::string fish_sign = "toward_adapted";
  std::string ipm = "linear_mmd";
  std::string theta;
  std::string alpha_list = "0,10";
  std::string eps_list = "0.5";
  int seeds = 1;
  int jobs = 1;
  double split = 0.8;
  int domains = 3;
  std::uint64_t seed = 0;
  TrainConfig config;
};

void AddTrainOptions(CLI::App* cmd, TrainFlags& f, bool grid) {
  TrainConfig& c = f.config;
  cmd->add_option("--config", "Flat key=value file; flags override it");
  cmd->add_option("--dataset", f.dataset, "Dataset CSV")->required();
  cmd->add_option("--anchor", f.anchor, "Anchor covariate name (without x_)")
      ->required();
  cmd->add_option("--drop", f.drop,
                  "Comma-separated covariates to hide (induced confounding)");
  cmd->add_option("--mode", f.mode, "sequential | alternating")
      ->capture_default_str();
  if (grid) {
    cmd->add_option("--alpha", f.alpha_list, "Comma-separated IPM weights")
        ->capture_default_str();
    cmd->add_option("--eps", f.eps_list,
                    "Comma-separated gradient-matching step sizes")
        ->capture_default_str();
    cmd->add_option("--seeds", f.seeds, "Seeds per cell: seed, seed+1, ...")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--jobs", f.jobs, "Concurrent cells")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  } else {
    cmd->add_option("--alpha", c.ipm_weight, "IPM weight (0 gives TARNet)")
        ->capture_default_str();
    cmd->add_option("--eps", c.fish_step, "Gradient-matching step in (0, 1]")
        ->capture_default_str();
  }
  cmd->add_option("--beta", c.fish_inner_lr, "Per-domain inner learning rate")
      ->capture_default_str();
  cmd->add_option("--eta", c.cfr_lr, "Outcome-phase learning rate")
      ->capture_default_str();
  cmd->add_option("--lambda", c.weight_decay, "L2 weight on head weights")
      ->capture_default_str();
  cmd->add_option("--decay", c.lr_decay, "Per-epoch learning-rate decay")
      ->capture_default_str();
  cmd->add_option("--epochs", c.epochs, "Outcome-phase epochs")
      ->capture_default_str();
  cmd->add_option("--fish-iters", c.fish_iters, "Gradient-matching iterations")
      ->capture_default_str();
  cmd->add_option("--fish-sign", f.fish_sign, "toward_adapted | paper_literal")
      ->capture_default_str();
  cmd->add_option("--batch-size", c.batch_size, "Mini-batch size")
      ->capture_default_str();
  cmd->add_option("--domains", f.domains, "Number of anchor domains")
      ->capture_default_str();
  cmd->add_option("--theta", f.theta, "Comma-separated domain slopes");
  cmd->add_option("--ipm", f.ipm, "linear_mmd | rbf_mmd | sinkhorn")
      ->capture_default_str();
  cmd->add_option("--sigma", c.ipm.sigma, "RBF bandwidth")
      ->capture_default_str();
  cmd->add_option("--sinkhorn-reg", c.ipm.sinkhorn.reg,
                  "Sinkhorn entropic regularization")
      ->capture_default_str();
  cmd->add_option("--hidden-width", c.net.hidden_width, "Hidden layer width")
      ->capture_default_str();
  cmd->add_option("--rep-layers", c.net.rep_layers, "Representation layers")
      ->capture_default_str();
  cmd->add_option("--head-layers", c.net.head_layers, "Outcome head layers")
      ->capture_default_str();
  cmd->add_option("--dropout", c.net.dropout, "Dropout rate")
      ->capture_default_str();
  cmd->add_option("--split", f.split, "Training fraction of the rows")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed for split, domains and training")
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
}

TrainConfig BuildTrainConfig(const TrainFlags& f, std::uint64_t seed) {
  TrainConfig c = f.config;
  c.mode = ParseTrainMode(f.mode);
  c.fish_sign = ParseFishSign(f.fish_sign);
  c.ipm.kind = ParseIpmKind(f.ipm);
  c.seed = seed;
  c.Validate();
  return c;
}

DomainConfig BuildDomainConfig(const TrainFlags& f, std::uint64_t seed) {
  DomainConfig d;
  d.num_domains = f.domains;
  d.seed = seed;
  if (!f.theta.empty()) d.theta = ParseDoubleList(f.theta, "--theta");
  ResolveTheta(d);
  return d;
}

Dataset LoadTrainingData(const TrainFlags& f) {
  if (!(f.split > 0.0 && f.split < 1.0)) {
    throw ConfigError("--split must lie in (0, 1)");
  }
  Dataset data = LoadCsv(f.dataset, f.anchor);
  if (!f.drop.empty()) data = InduceConfounding(data, SplitList(f.drop));
  return data;
}

int RunTrain(const TrainFlags& f, std::ostream& out, std::ostream& err) {
  const TrainConfig config = BuildTrainConfig(f, f.seed);
  const DomainConfig domains = BuildDomainConfig(f, f.seed);
  const Dataset data = LoadTrainingData(f);
  const SplitResult split = Split(data, f.split, f.seed);
  const TrainResult result = Train(split.train, config, domains);
  for (const std::string& w : result.warnings) err << "warning: " << w << '\n';

  const std::string label = ModelLabel(config);
  const MetricsReport within = Evaluate(result.model, split.train,
                                        SampleSplit::kWithin, "train", label);
  const MetricsReport outside = Evaluate(result.model, split.test,
                                         SampleSplit::kOut, "train", label);
  const std::string metrics = MetricsCsvHeader() + '\n' + ToCsvRow(within) +
                              '\n' + ToCsvRow(outside) + '\n';

  const std::filesystem::path dir(f.out);
  PrepareOutputDir(dir);
  WriteFileAtomic(dir / "model.txt", SerializeModel(result.model));
  WriteFileAtomic(dir / "train_log.csv", TrainingLogCsv(result.log));
  WriteFileAtomic(dir / "metrics.csv", metrics);
  out << label << ": trained on " << split.train.n() << " rows";
  if (outside.ate_error) {
    out << ", out-of-sample ATE error " << FormatDouble(*outside.ate_error);
  }
  out << "\nwrote " << (dir / "metrics.csv").string() << '\n';
  return kExitOk;
}

int RunAblate(const TrainFlags& f, std::ostream& out, std::ostream& err) {
  const std::vector<double> alphas = ParseDoubleList(f.alpha_list, "--alpha");
  const std::vector<double> epss = ParseDoubleList(f.eps_list, "--eps");
  std::vector<AblationCell> cells;
  std::vector<TrainConfig> configs;
  for (double alpha : alphas) {
    for (double eps : epss) {
      for (int k = 0; k < f.seeds; ++k) {
        TrainFlags cell_flags = f;
        cell_flags.config.ipm_weight = alpha;
        cell_flags.config.fish_step = eps;
        const std::uint64_t seed = f.seed + static_cast<std::uint64_t>(k);
        configs.push_back(BuildTrainConfig(cell_flags, seed));
        AblationCell cell;
        cell.alpha = alpha;
        cell.eps = eps;
        cell.seed = seed;
        cell.model = ModelLabel(configs.back());
        cells.push_back(cell);
      }
    }
  }
  BuildDomainConfig(f, f.seed);
  const Dataset data = LoadTrainingData(f);
  if (!data.has_ground_truth()) {
    throw DataError("ablate needs mu0 and mu1 columns in '" + f.dataset + "'");
  }

  ParallelFor(static_cast<int>(cells.size()), f.jobs, [&](int i) {
    AblationCell& cell = cells[i];
    try {
      const SplitResult split = Split(data, f.split, cell.seed);
      const TrainResult result =
          Train(split.train, configs[i], BuildDomainConfig(f, cell.seed));
      const MetricsReport r = Evaluate(result.model, split.test,
                                       SampleSplit::kOut, "ablate", cell.model);
      cell.ate_error = *r.ate_error;
      cell.sqrt_pehe = *r.sqrt_pehe;
      cell.ok = true;
    } catch (const Error& e) {
      cell.message = e.what();
    }
  });

  int failed = 0;
  for (const AblationCell& c : cells) {
    if (c.ok) continue;
    ++failed;
    err << "warning: cell alpha=" << FormatDouble(c.alpha)
        << " eps=" << FormatDouble(c.eps) << " seed=" << c.seed
        << " failed: " << c.message << '\n';
  }
  const std::filesystem::path dir(f.out);
  PrepareOutputDir(dir);
  WriteFileAtomic(dir / "ablation.csv", AblationCsv(cells));
  out << cells.size() << " runs, " << failed << " failed\nwrote "
      << (dir / "ablation.csv").string() << '\n';
  return kExitOk;
}

struct SimulateFlags {
  std::string sem_path;
  std::string preset = "four_node";
  int n = 1000;
  bool randomize = false;
  std::uint64_t seed = 0;
  std::string out = "causalmatch_out";
};

int RunSimulate(const SimulateFlags& f, std::ostream& out) {
  LinearSem sem;
  if (!f.sem_path.empty()) {
    sem = LoadSem(f.sem_path);
  } else if (f.preset == "four_node") {
    sem = FourNodeConfounderSem();
  } else if (f.preset == "benchmark") {
    sem = HiddenConfounderBenchmarkSem();
  } else if (f.preset == "random") {
    sem = RandomSem(RandomSemOptions{}, f.seed);
  } else {
    throw ConfigError("unknown --preset '" + f.preset +
                      "' (expected four_node, benchmark or random)");
  }
  SynthOptions options;
  options.randomize_treatment = f.randomize;
  const SynthResult s = SynthDataset(sem, f.n, f.seed, options);
  const Dataset& d = s.data;

  double sum1 = 0.0;
  double sum0 = 0.0;
  for (int i = 0; i < d.n(); ++i) (d.t[i] > 0.5 ? sum1 : sum0) += d.y[i];
  const int n1 = d.num_treated();
  const double naive = sum1 / n1 - sum0 / (d.n() - n1);
  const Vector ite = d.TrueIte();
  std::string hidden;
  for (size_t k = 0; k < d.hidden_names.size(); ++k) {
    hidden += (k ? ";" : "") + d.hidden_names[k];
  }
  std::ostringstream truth;
  truth << "key,value\n"
        << "n," << d.n() << '\n'
        << "treated," << n1 << '\n'
        << "anchor," << d.feature_names[d.anchor_index] << '\n'
        << "hidden," << hidden << '\n'
        << "true_ate," << FormatDouble(s.true_ate) << '\n'
        << "sample_ate," << FormatDouble(ite.mean()) << '\n'
        << "ite_min," << FormatDouble(ite.minCoeff()) << '\n'
        << "ite_max," << FormatDouble(ite.maxCoeff()) << '\n'
        << "difference_in_means," << FormatDouble(naive) << '\n';

  const std::filesystem::path dir(f.out);
  PrepareOutputDir(dir);
  CommitAtomically(dir / "data.csv",
                   [&](const std::string& tmp) { SaveCsv(d, tmp); });
  WriteFileAtomic(dir / "sem.txt", SerializeSem(sem));
  WriteFileAtomic(dir / "truth.csv", truth.str());
  out << "true ATE " << FormatDouble(s.true_ate) << ", anchor '"
      << d.feature_names[d.anchor_index] << "'\nwrote "
      << (dir / "data.csv").string() << '\n';
  return kExitOk;
}

struct TheoremFlags {
  TheoremTrialConfig config;
  int jobs = 1;
  std::string out = "causalmatch_out";
};

int RunValidateTheorem(const TheoremFlags& f, std::ostream& out) {
  const TheoremReport report = ValidateTheorem2(f.config, f.jobs);
  const std::filesystem::path dir(f.out);
  PrepareOutputDir(dir);
  WriteFileAtomic(dir / "theorem.csv", TheoremReportCsv(report));
  out << report.violations << " violations over " << report.pairs
      << " (trial, Z) pairs, fraction "
      << FormatDouble(report.violation_fraction) << "\nwrote "
      << (dir / "theorem.csv").string() << '\n';
  return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return kExitConfig;
    case ErrorKind::kNumeric:
      return kExitNumeric;
    case ErrorKind::kShape:
    case ErrorKind::kData:
    case ErrorKind::kDegenerate:
    case ErrorKind::kUnavailable:
      return kExitData;
  }
  return kExitUnexpected;
}

std::map<std::string, std::string> ParseConfigText(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) +
                        ": expected key=value");
    }
    std::string key = Trim(line.substr(0, eq));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(number) +
                        ": empty key");
    }
    if (key == "config") {
      throw ConfigError("config files cannot include other config files");
    }
    entries[key] = Trim(line.substr(eq + 1));
  }
  return entries;
}

std::vector<std::string> ExpandConfig(const std::vector<std::string>& args) {
  if (args.empty() || args[0].starts_with("-")) return args;
  std::vector<std::string> rest;
  std::string path;
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a path");
      path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  std::vector<std::string> out = {args[0]};
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    for (const auto& [key, value] : ParseConfigText(buffer.str())) {
      out.push_back("--" + key + "=" + value);
    }
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& content) {
  CommitAtomically(path, [&](const std::string& tmp) {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    os << content;
    os.close();
    if (!os) throw DataError("cannot write '" + path.string() + "'");
  });
}

MetricsReport Evaluate(const TrainedModel& model, const Dataset& data,
                       SampleSplit split, const std::string& run,
                       const std::string& label) {
  MetricsReport r;
  r.run = run;
  r.model = label;
  r.split = split;
  r.n = data.n();
  const PotentialOutcomes po = model.PredictOutcomes(data);
  const Vector tau = po.f1 - po.f0;
  const Vector factual =
      (data.t.array() > 0.5).select(po.f1, po.f0);
  r.ate_hat = tau.mean();
  r.factual_rmse = FactualRmse(factual, data.y);
  if (data.has_ground_truth()) {
    const Vector ite = data.TrueIte();
    r.ate_error = AteError(tau, ite.mean());
    r.sqrt_pehe = SqrtPehe(tau, ite);
    const int treated = data.num_treated();
    if (treated > 0) {
      double sum = 0.0;
      for (int i = 0; i < data.n(); ++i) {
        if (data.t[i] > 0.5) sum += ite[i];
      }
      r.att_error = AttError(tau, data.t, sum / treated, false);
    }
  }
  return r;
}

std::string AblationCsv(std::vector<AblationCell> cells) {
  std::stable_sort(cells.begin(), cells.end(),
                   [](const AblationCell& a, const AblationCell& b) {
                     return std::tie(a.alpha, a.eps, a.seed) <
                            std::tie(b.alpha, b.eps, b.seed);
                   });
  std::ostringstream os;
  os << "row_type,model,alpha,eps,seed,status,n_ok,ate_error,ate_error_std,"
        "sqrt_pehe,sqrt_pehe_std,message\n";
  const auto mean_std = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd =
        v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    return std::make_pair(mean, sd);
  };
  for (size_t begin = 0; begin < cells.size();) {
    size_t end = begin;
    std::vector<double> ate;
    std::vector<double> pehe;
    while (end < cells.size() && cells[end].alpha == cells[begin].alpha &&
           cells[end].eps == cells[begin].eps) {
      const AblationCell& c = cells[end];
      os << "run," << c.model << ',' << FormatDouble(c.alpha) << ','
         << FormatDouble(c.eps) << ',' << c.seed << ','
         << (c.ok ? "ok" : "failed") << ',' << (c.ok ? 1 : 0) << ',';
      if (c.ok) {
        os << FormatDouble(c.ate_error) << ",," << FormatDouble(c.sqrt_pehe)
           << ",,\n";
        ate.push_back(c.ate_error);
        pehe.push_back(c.sqrt_pehe);
      } else {
        os << ",,,," << CsvSafe(c.message) << '\n';
      }
      ++end;
    }
    const AblationCell& c = cells[begin];
    os << "aggregate," << c.model << ',' << FormatDouble(c.alpha) << ','
       << FormatDouble(c.eps) << ",," << (ate.empty() ? "failed" : "ok") << ','
       << ate.size() << ',';
    if (ate.empty()) {
      os << ",,,,\n";
    } else {
      const auto [am, as] = mean_std(ate);
      const auto [pm, ps] = mean_std(pehe);
      os << FormatDouble(am) << ',' << FormatDouble(as) << ','
         << FormatDouble(pm) << ',' << FormatDouble(ps) << ",\n";
    }
    begin = end;
  }
  return os.str();
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  try {
    std::vector<std::string> expanded = ExpandConfig(args);

    CLI::App app{"Treatment-effect estimation with anchor-domain gradient "
                 "matching and covariate balancing",
                 "causalmatch"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    TrainFlags train_flags;
    CLI::App* train = app.add_subcommand("train", "Train one model");
    AddTrainOptions(train, train_flags, false);

    TrainFlags ablate_flags;
    CLI::App* ablate =
        app.add_subcommand("ablate", "Grid over IPM weight and step size");
    AddTrainOptions(ablate, ablate_flags, true);

    SimulateFlags sim;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Sample a dataset from a linear SEM");
    simulate->add_option("--config", "Flat key=value file; flags override it");
    simulate->add_option("--sem", sim.sem_path, "SEM file (overrides --preset)");
    simulate->add_option("--preset", sim.preset, "four_node | benchmark | random")
        ->capture_default_str();
    simulate->add_option("--n", sim.n, "Rows")->capture_default_str();
    simulate->add_flag("--randomize", sim.randomize,
                       "Assign treatment by a fair coin instead of the SEM");
    simulate->add_option("--seed", sim.seed, "Sampling seed")
        ->capture_default_str();
    simulate->add_option("--out", sim.out, "Output directory")
        ->capture_default_str();

    TheoremFlags thm;
    CLI::App* validate = app.add_subcommand(
        "validate-theorem", "Invariance-implies-adjustment trials on random SEMs");
    TheoremTrialConfig& tc = thm.config;
    validate->add_option("--config", "Flat key=value file; flags override it");
    validate->add_option("--trials", tc.trials, "Random SEMs")
        ->capture_default_str();
    validate->add_option("--p-min", tc.p_min, "Smallest node count")
        ->capture_default_str();
    validate->add_option("--p-max", tc.p_max, "Largest node count")
        ->capture_default_str();
    validate->add_option("--eps", tc.epsilon, "Covariance threshold")
        ->capture_default_str();
    validate->add_option("--alpha", tc.alpha_min, "Smallest anchor edge")
        ->capture_default_str();
    validate->add_option("--beta", tc.beta_max,
                         "Cap on other treatment-parent weights")
        ->capture_default_str();
    validate->add_option("--edge-prob", tc.edge_prob, "Edge probability")
        ->capture_default_str();
    validate->add_option("--hidden-prob", tc.hidden_prob,
                         "Chance of a hidden confounder")
        ->capture_default_str();
    validate->add_option("--seed", tc.seed, "Trial seed")->capture_default_str();
    validate->add_option("--jobs", thm.jobs, "Concurrent trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    validate->add_option("--out", thm.out, "Output directory")
        ->capture_default_str();

    std::reverse(expanded.begin(), expanded.end());
    try {
      app.parse(expanded);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitConfig;
    }

    if (train->parsed()) return RunTrain(train_flags, out, err);
    if (ablate->parsed()) return RunAblate(ablate_flags, out, err);
    if (simulate->parsed()) return RunSimulate(sim, out);
    return RunValidateTheorem(thm, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnexpected;
  }
}

}  // namespace causalmatch::cli
