// Copyright 2026 The GlobalDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// globaldp: command-line front end for the simulator.
//
//   globaldp ingest-check [--data PATH]
//   globaldp run [--config FILE] [--out-dir DIR] [--seeds ...] ...
//   globaldp plot --csv FILE [--out-dir DIR]
//   globaldp leakage-demo [--seed N] [--dim D]
//   globaldp dp-check --sensitivity D --sigma S --epsilon E --delta P

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "globaldp/dataset.h"
#include "globaldp/errors.h"
#include "globaldp/experiment.h"
#include "globaldp/federation.h"
#include "globaldp/linear_model.h"
#include "globaldp/privacy.h"

namespace globaldp {
namespace {

namespace fs = std::filesystem;

constexpr char kDefaultData[] = "data/breast-cancer-wisconsin.data";

int IngestCheck(const fs::path& data) {
  const auto records = ParseBcwd(data);
  std::size_t raw_malignant = 0;
  for (const auto& r : records) raw_malignant += r.class_code == kMalignantClass;
  const auto clean = CleanAndNormalize(records);
  std::size_t malignant = 0;
  for (const auto& e : clean.examples) malignant += e.label > 0;

  std::printf("file:          %s\n", data.string().c_str());
  std::printf("records:       %zu (benign %zu, malignant %zu)\n", records.size(),
              records.size() - raw_malignant, raw_malignant);
  std::printf("incomplete:    %zu dropped\n", clean.dropped);
  std::printf("clean:         %zu (benign %zu, malignant %zu)\n",
              clean.examples.size(), clean.examples.size() - malignant,
              malignant);
  std::printf("attributes:    %zu, scaled to [0,1]\n", kNumAttributes);
  return 0;
}

struct RunOptions {
  std::string config;
  std::string out_dir = "out";
  std::vector<std::uint64_t> seeds;
  std::vector<double> epsilons;
  std::vector<int> clients;
  std::optional<int> rounds;
  std::vector<std::string> baselines;
  std::string data;
  int workers = 1;
};

// Plots are best effort: a grid that cannot feed a figure still has results.
void TryPlots(std::span<const ResultRow> rows, const fs::path& out_dir) {
  try {
    const auto put = EmitPutPlot(rows, out_dir / "put.svg");
    std::printf("wrote %s (%zu series)\n", (out_dir / "put.svg").string().c_str(),
                put.series.size());
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "put.svg skipped: %s\n", e.what());
  }
  try {
    const auto ep = EmitEpochsPlot(rows, out_dir / "epochs.svg");
    for (const auto& w : ep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::printf("wrote %s (%zu curves)\n",
                (out_dir / "epochs.svg").string().c_str(), ep.series.size());
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "epochs.svg skipped: %s\n", e.what());
  }
}

int Run(const RunOptions& opt) {
  ExperimentGrid grid;
  if (!opt.config.empty()) grid = LoadGridConfig(opt.config);
  if (!opt.seeds.empty()) grid.seeds = opt.seeds;
  if (!opt.epsilons.empty()) grid.epsilons = opt.epsilons;
  if (!opt.clients.empty()) grid.client_counts = opt.clients;
  if (opt.rounds) grid.rounds = *opt.rounds;
  if (!opt.baselines.empty()) {
    grid.baselines.clear();
    for (const auto& b : opt.baselines) grid.baselines.push_back(ParseBaseline(b));
  }
  if (!opt.data.empty()) grid.dataset_path = opt.data;
  grid.Validate();

  const fs::path out_dir = opt.out_dir;
  fs::create_directories(out_dir / "traces");
  const GridResult result = RunGrid(grid, opt.workers);

  std::size_t failed = 0;
  for (const auto& cell : result.cells) {
    if (cell.error) {
      ++failed;
      std::fprintf(stderr, "cell failed: %s\n", cell.error->c_str());
      continue;
    }
    if (!cell.traces.empty()) {
      WriteTraces(cell.traces,
                  out_dir / "traces" / (cell.cell.Label() + ".ndjson"));
    }
  }
  const auto rows = result.Rows();
  if (!rows.empty()) {
    EmitCsv(rows, out_dir / "results.csv");
    std::printf("wrote %s (%zu rows)\n",
                (out_dir / "results.csv").string().c_str(), rows.size());
    TryPlots(rows, out_dir);
  }
  std::printf("%zu cells, %zu failed\n", result.cells.size(), failed);
  return failed == 0 ? 0 : 1;
}

int Plot(const std::string& csv, const std::string& out_dir,
         std::optional<int> clients, std::optional<double> epsilon) {
  const auto rows = LoadCsv(csv);
  fs::create_directories(out_dir);
  const auto put = EmitPutPlot(rows, fs::path(out_dir) / "put.svg");
  std::printf("put.svg: %zu series\n", put.series.size());
  const auto ep =
      EmitEpochsPlot(rows, fs::path(out_dir) / "epochs.svg", clients, epsilon);
  for (const auto& w : ep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("epochs.svg: %zu curves\n", ep.series.size());
  return 0;
}

void PrintVector(const char* name, std::span<const double> v) {
  std::printf("%-10s [", name);
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::printf("%s%.6f", i ? ", " : "", v[i]);
  }
  std::printf("]\n");
}

int LeakageCommand(std::uint64_t seed, int dim) {
  Rng rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(dim), x(dim);
  for (auto& v : w) v = n(rng);
  for (auto& v : x) v = u(rng);  // a record, features in [0,1]
  const double y = 1.0;
  const auto leak = LeakageDemo(w, x, y);

  // Dividing out the scalar residual recovers the record exactly.
  std::vector<double> recovered = leak.gradient;
  const double residual = y - Dot(w, x);
  for (auto& v : recovered) v /= residual;

  PrintVector("record x", x);
  PrintVector("gradient", leak.gradient);
  PrintVector("g/(y-w.x)", recovered);
  std::printf("residual   %.6f\n", residual);
  std::printf("|cos(g,x)| %.15f\n", leak.cosine);
  std::printf("The shared gradient is the record scaled by the residual.\n");
  return 0;
}

int DpCheck(double sensitivity, double sigma, double epsilon, double delta) {
  const double dstar = AnalyticGaussianDelta(sensitivity, sigma, epsilon);
  const bool ok = dstar <= delta;
  std::printf("delta*(eps) = %.6e, target delta = %.6e -> %s\n", dstar, delta,
              ok ? "satisfied" : "violated");
  if (delta < 1.0) {
    std::printf("classical calibration c(delta)*Delta/eps = %.6g\n",
                CFactor(delta) * sensitivity / epsilon);
  }
  return ok ? 0 : 1;
}

}  // namespace
}  // namespace globaldp

int main(int argc, char** argv) {
  using namespace globaldp;
  CLI::App app{"Globally differentially private federated SVM simulator"};
  app.require_subcommand(1);

  std::string ingest_data = kDefaultData;
  auto* ingest = app.add_subcommand("ingest-check", "Parse and summarize the dataset");
  ingest->add_option("--data", ingest_data, "BCWD .data file")->capture_default_str();

  RunOptions run_opt;
  int rounds = 0;
  auto* run = app.add_subcommand("run", "Run an experiment grid");
  run->add_option("--config", run_opt.config, "key = value config file");
  run->add_option("--out-dir", run_opt.out_dir, "output directory")
      ->capture_default_str();
  run->add_option("--seeds", run_opt.seeds, "seeds")->delimiter(',');
  run->add_option("--epsilons", run_opt.epsilons, "privacy levels")->delimiter(',');
  run->add_option("--clients", run_opt.clients, "client counts V")->delimiter(',');
  auto* rounds_opt = run->add_option("--rounds", rounds, "communication rounds T");
  run->add_option("--baselines", run_opt.baselines,
                  "private, nonprivate_federated, centralized")
      ->delimiter(',');
  run->add_option("--data", run_opt.data, "BCWD .data file");
  run->add_option("--workers", run_opt.workers, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string csv, plot_dir = "out";
  int plot_clients = 0;
  double plot_eps = 0;
  auto* plot = app.add_subcommand("plot", "Redraw figures from results.csv");
  plot->add_option("--csv", csv, "results.csv")->required();
  plot->add_option("--out-dir", plot_dir, "output directory")->capture_default_str();
  auto* plot_v = plot->add_option("--clients", plot_clients, "V for epochs.svg");
  auto* plot_e = plot->add_option("--epsilon", plot_eps, "epsilon for epochs.svg");

  std::uint64_t leak_seed = 0;
  int leak_dim = kNumAttributes;
  auto* leak = app.add_subcommand("leakage-demo",
                                  "Show that a squared-loss gradient reveals its record");
  leak->add_option("--seed", leak_seed)->capture_default_str();
  leak->add_option("--dim", leak_dim)->check(CLI::PositiveNumber)->capture_default_str();

  double sens = 0, sigma = 0, eps = 0, delta = 0;
  auto* dp = app.add_subcommand("dp-check", "Analytic Gaussian (eps, delta) check");
  dp->add_option("--sensitivity", sens, "L2 sensitivity")->required();
  dp->add_option("--sigma", sigma, "noise std")->required();
  dp->add_option("--epsilon", eps)->required();
  dp->add_option("--delta", delta)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return IngestCheck(ingest_data);
    if (*run) {
      if (*rounds_opt) run_opt.rounds = rounds;
      return Run(run_opt);
    }
    if (*plot) {
      return Plot(csv, plot_dir,
                  *plot_v ? std::optional<int>(plot_clients) : std::nullopt,
                  *plot_e ? std::optional<double>(plot_eps) : std::nullopt);
    }
    if (*leak) return LeakageCommand(leak_seed, leak_dim);
    if (*dp) return DpCheck(sens, sigma, eps, delta);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
