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

#ifndef GLOBALDP_EXPERIMENT_H_
#define GLOBALDP_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "globaldp/dataset.h"
#include "globaldp/federation.h"
#include "globaldp/linear_model.h"

namespace globaldp {

enum class Baseline { kPrivate = 0, kNonprivateFederated = 1, kCentralized = 2 };

std::string_view BaselineName(Baseline b);
// Throws ConfigError for unknown names.
Baseline ParseBaseline(std::string_view name);

struct ExperimentGrid {
  std::vector<double> epsilons = {5, 10, 20, 25, 30, 50};
  std::vector<int> client_counts = {5, 10, 20};
  int rounds = 50;
  std::optional<int> exposures;  // nullopt: E = T
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<Baseline> baselines = {Baseline::kPrivate,
                                     Baseline::kNonprivateFederated,
                                     Baseline::kCentralized};
  std::filesystem::path dataset_path = "data/breast-cancer-wisconsin.data";
  TrainConfig train;
  double delta = 0.01;
  double clip_bound = 1.0;
  double test_fraction = 0.2;

  int EffectiveExposures() const { return exposures.value_or(rounds); }
  // Throws ConfigError.
  void Validate() const;
};

// Reads a flat `key = value` file ('#' starts a comment) on top of `base`.
// List values are comma separated. Throws ConfigError naming the line.
ExperimentGrid ParseGridConfig(std::istream& in, ExperimentGrid base = {});
ExperimentGrid LoadGridConfig(const std::filesystem::path& path,
                              ExperimentGrid base = {});

struct ResultRow {
  Baseline baseline = Baseline::kPrivate;
  std::uint64_t seed = 0;
  int num_clients = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double clip_bound = 0.0;
  int rounds = 0;
  int exposures = 0;
  int round = 0;
  double mean_test_accuracy = 0.0;
  double mean_hinge_loss = 0.0;
};

struct GridCell {
  Baseline baseline = Baseline::kPrivate;
  std::uint64_t seed = 0;
  int num_clients = 0;
  double epsilon = 0.0;

  std::string Label() const;  // e.g. private_seed3_V20_eps20
};

struct CellOutcome {
  GridCell cell;
  std::vector<ResultRow> rows;
  std::vector<RoundTrace> traces;  // empty for the centralized baseline
  std::optional<std::string> error;
};

struct GridResult {
  std::vector<CellOutcome> cells;  // in EnumerateCells order

  bool ok() const;
  // All rows ordered by (baseline, seed, V, epsilon, round).
  std::vector<ResultRow> Rows() const;
};

std::vector<GridCell> EnumerateCells(const ExperimentGrid& grid);

// private: RunProtocol; nonprivate_federated: RunRounds with a zero plan and
// no clipping; centralized: T warm-started LocalTrain calls on the pooled
// training shards. The split and every stream derive from cell.seed alone.
CellOutcome RunCell(const GridCell& cell, const ExperimentGrid& grid,
                    std::span<const LabeledExample> examples);

// Runs every cell on `workers` threads. Failed cells carry their error and do
// not stop the others.
GridResult RunGrid(const ExperimentGrid& grid,
                   std::span<const LabeledExample> examples, int workers = 1);
// Loads and cleans grid.dataset_path first.
GridResult RunGrid(const ExperimentGrid& grid, int workers = 1);

void SortRows(std::vector<ResultRow>& rows);

// Header plus one line per row, floats with 6 significant digits.
std::string FormatCsv(std::span<const ResultRow> rows);
void EmitCsv(std::span<const ResultRow> rows,
             const std::filesystem::path& path);
std::vector<ResultRow> ParseCsv(std::istream& in);
std::vector<ResultRow> LoadCsv(const std::filesystem::path& path);

struct PlotSummary {
  std::vector<std::string> series;  // legend labels, in drawing order
  std::vector<std::size_t> points;  // points per series
  std::vector<std::string> warnings;
};

// Final-round accuracy and hinge loss against epsilon for private rows, one
// series per V, seed means with min-max whiskers. Needs >= 2 distinct
// epsilons; throws ConfigError otherwise.
PlotSummary EmitPutPlot(std::span<const ResultRow> rows,
                        const std::filesystem::path& path);

// Seed-mean accuracy per round for each baseline at one (V, epsilon). By
// default picks the largest V and epsilon 25 when present (else the largest).
// Missing baselines are skipped with a warning; needs private rows and at
// least one other baseline.
PlotSummary EmitEpochsPlot(std::span<const ResultRow> rows,
                           const std::filesystem::path& path,
                           std::optional<int> num_clients = std::nullopt,
                           std::optional<double> epsilon = std::nullopt);

// Seed-mean final-round accuracy of one (baseline, V, epsilon) group.
std::optional<double> FinalAccuracy(std::span<const ResultRow> rows,
                                    Baseline baseline, int num_clients,
                                    double epsilon);

// Sample std of round-to-round accuracy changes, pooled over seeds.
std::optional<double> AccuracyDeltaStd(std::span<const ResultRow> rows,
                                       Baseline baseline, int num_clients,
                                       double epsilon);

}  // namespace globaldp

#endif  // GLOBALDP_EXPERIMENT_H_
