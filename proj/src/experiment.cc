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

#include "globaldp/experiment.h"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "globaldp/errors.h"
#include "globaldp/privacy.h"
#include "svg_plot.h"

namespace globaldp {
namespace {

constexpr const char* kCsvHeader =
    "baseline,seed,V,epsilon,delta,B,T,E,round,mean_test_accuracy,"
    "mean_hinge_loss";

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitList(std::string_view s, char sep = ',') {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double ToDouble(std::string_view s, const std::string& what) {
  const std::string str(s);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size() || errno == ERANGE) {
    throw ConfigError(what + ": '" + str + "' is not a number");
  }
  return v;
}

template <typename Int>
Int ToInt(std::string_view s, const std::string& what) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(what + ": '" + std::string(s) + "' is not an integer");
  }
  return v;
}

std::string Sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool SameValue(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
}

auto RowKey(const ResultRow& r) {
  return std::make_tuple(static_cast<int>(r.baseline), r.seed, r.num_clients,
                         r.epsilon, r.round);
}

ResultRow BaseRow(const GridCell& cell, const ExperimentGrid& grid) {
  ResultRow row;
  row.baseline = cell.baseline;
  row.seed = cell.seed;
  row.num_clients = cell.num_clients;
  row.epsilon = cell.epsilon;
  row.delta = grid.delta;
  row.clip_bound = grid.clip_bound;
  row.rounds = grid.rounds;
  row.exposures = grid.EffectiveExposures();
  return row;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<const ResultRow*> Select(std::span<const ResultRow> rows,
                                     Baseline baseline, int num_clients,
                                     double epsilon) {
  std::vector<const ResultRow*> out;
  for (const auto& r : rows) {
    if (r.baseline == baseline && r.num_clients == num_clients &&
        SameValue(r.epsilon, epsilon)) {
      out.push_back(&r);
    }
  }
  return out;
}

}  // namespace

std::string_view BaselineName(Baseline b) {
  switch (b) {
    case Baseline::kPrivate: return "private";
    case Baseline::kNonprivateFederated: return "nonprivate_federated";
    case Baseline::kCentralized: return "centralized";
  }
  return "unknown";
}

Baseline ParseBaseline(std::string_view name) {
  for (Baseline b : {Baseline::kPrivate, Baseline::kNonprivateFederated,
                     Baseline::kCentralized}) {
    if (BaselineName(b) == name) return b;
  }
  throw ConfigError("unknown baseline '" + std::string(name) + "'");
}

void ExperimentGrid::Validate() const {
  if (epsilons.empty() || client_counts.empty() || seeds.empty() ||
      baselines.empty()) {
    throw ConfigError("epsilons, clients, seeds and baselines must be nonempty");
  }
  for (double e : epsilons) {
    if (!(e > 0.0)) throw ConfigError("every epsilon must be > 0");
  }
  for (int v : client_counts) {
    if (v < 1) throw ConfigError("every client count must be >= 1");
  }
  if (rounds < 1) throw ConfigError("rounds must be >= 1");
  const int e = EffectiveExposures();
  if (e < 1 || e > rounds) throw ConfigError("exposures must satisfy 1 <= E <= T");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
  if (!(clip_bound > 0.0)) throw ConfigError("clip_B must be > 0");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie in (0,1)");
  }
  train.Validate();
}

ExperimentGrid ParseGridConfig(std::istream& in, ExperimentGrid grid) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = Trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key(Trim(text.substr(0, eq)));
    const std::string_view value = Trim(text.substr(eq + 1));
    const std::string what = "config line " + std::to_string(line_no) + " (" + key + ")";

    if (key == "epsilons") {
      grid.epsilons.clear();
      for (auto p : SplitList(value)) grid.epsilons.push_back(ToDouble(p, what));
    } else if (key == "clients") {
      grid.client_counts.clear();
      for (auto p : SplitList(value)) grid.client_counts.push_back(ToInt<int>(p, what));
    } else if (key == "seeds") {
      grid.seeds.clear();
      for (auto p : SplitList(value)) grid.seeds.push_back(ToInt<std::uint64_t>(p, what));
    } else if (key == "baselines") {
      grid.baselines.clear();
      for (auto p : SplitList(value)) grid.baselines.push_back(ParseBaseline(p));
    } else if (key == "rounds") {
      grid.rounds = ToInt<int>(value, what);
    } else if (key == "exposures") {
      if (value == "equal-T") {
        grid.exposures.reset();
      } else {
        grid.exposures = ToInt<int>(value, what);
      }
    } else if (key == "dataset") {
      grid.dataset_path = std::string(value);
    } else if (key == "delta") {
      grid.delta = ToDouble(value, what);
    } else if (key == "clip_B") {
      grid.clip_bound = ToDouble(value, what);
    } else if (key == "test_fraction") {
      grid.test_fraction = ToDouble(value, what);
    } else if (key == "local_epochs") {
      grid.train.local_epochs = ToInt<int>(value, what);
    } else if (key == "learning_rate") {
      grid.train.learning_rate = ToDouble(value, what);
    } else if (key == "lr_decay") {
      grid.train.lr_decay = ToDouble(value, what);
    } else if (key == "l2_lambda") {
      grid.train.l2_lambda = ToDouble(value, what);
    } else {
      throw ConfigError(what + ": unknown key");
    }
  }
  return grid;
}

ExperimentGrid LoadGridConfig(const std::filesystem::path& path,
                              ExperimentGrid base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return ParseGridConfig(in, std::move(base));
}

std::string GridCell::Label() const {
  return std::string(BaselineName(baseline)) + "_seed" + std::to_string(seed) +
         "_V" + std::to_string(num_clients) + "_eps" + Sig6(epsilon);
}

bool GridResult::ok() const {
  return std::all_of(cells.begin(), cells.end(),
                     [](const CellOutcome& c) { return !c.error.has_value(); });
}

std::vector<ResultRow> GridResult::Rows() const {
  std::vector<ResultRow> rows;
  for (const auto& c : cells) rows.insert(rows.end(), c.rows.begin(), c.rows.end());
  SortRows(rows);
  return rows;
}

std::vector<GridCell> EnumerateCells(const ExperimentGrid& grid) {
  std::vector<Baseline> baselines = grid.baselines;
  std::sort(baselines.begin(), baselines.end());
  baselines.erase(std::unique(baselines.begin(), baselines.end()), baselines.end());
  std::vector<std::uint64_t> seeds = grid.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::vector<int> clients = grid.client_counts;
  std::sort(clients.begin(), clients.end());
  clients.erase(std::unique(clients.begin(), clients.end()), clients.end());
  std::vector<double> epsilons = grid.epsilons;
  std::sort(epsilons.begin(), epsilons.end());
  epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());

  std::vector<GridCell> cells;
  for (Baseline b : baselines) {
    for (std::uint64_t s : seeds) {
      for (int v : clients) {
        for (double e : epsilons) cells.push_back({b, s, v, e});
      }
    }
  }
  return cells;
}

CellOutcome RunCell(const GridCell& cell, const ExperimentGrid& grid,
                    std::span<const LabeledExample> examples) {
  CellOutcome out;
  out.cell = cell;
  try {
    const DatasetSplit split =
        SplitAndPartition(examples, cell.num_clients, grid.test_fraction, cell.seed);
    const ResultRow base = BaseRow(cell, grid);

    if (cell.baseline == Baseline::kCentralized) {
      const std::vector<LabeledExample> pooled = split.PooledTrain();
      ModelVector w = ModelVector::Zeros(split.test.front().features.size());
      for (int t = 1; t <= grid.rounds; ++t) {
        Rng rng = MakeStream(cell.seed, Stream::kCentralized, 0,
                             static_cast<std::uint64_t>(t));
        w = LocalTrain(std::move(w), pooled, grid.train, rng);
        const EvalMetrics m = Evaluate(w, split.test);
        ResultRow row = base;
        row.round = t;
        row.mean_test_accuracy = m.accuracy;
        row.mean_hinge_loss = m.hinge_loss;
        out.rows.push_back(row);
      }
      return out;
    }

    ProtocolResult result;
    if (cell.baseline == Baseline::kPrivate) {
      PrivacyParams params{cell.epsilon, grid.delta, grid.clip_bound,
                           grid.rounds, grid.EffectiveExposures()};
      result = RunProtocol(split, params, grid.train, cell.seed);
    } else {
      result = RunRounds(split, NoisePlan{},
                         std::numeric_limits<double>::infinity(), grid.rounds,
                         grid.train, cell.seed);
    }
    for (const auto& trace : result.traces) {
      ResultRow row = base;
      row.round = trace.round;
      row.mean_test_accuracy = trace.mean_accuracy;
      row.mean_hinge_loss = trace.mean_hinge_loss;
      out.rows.push_back(row);
    }
    out.traces = std::move(result.traces);
  } catch (const std::exception& e) {
    out.rows.clear();
    out.traces.clear();
    out.error = cell.Label() + ": " + e.what();
  }
  return out;
}

GridResult RunGrid(const ExperimentGrid& grid,
                   std::span<const LabeledExample> examples, int workers) {
  grid.Validate();
  const std::vector<GridCell> cells = EnumerateCells(grid);
  GridResult result;
  result.cells.resize(cells.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      result.cells[i] = RunCell(cells[i], grid, examples);
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(cells.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
  }
  return result;
}

GridResult RunGrid(const ExperimentGrid& grid, int workers) {
  grid.Validate();
  const CleanResult clean = CleanAndNormalize(ParseBcwd(grid.dataset_path));
  return RunGrid(grid, clean.examples, workers);
}

void SortRows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     return RowKey(a) < RowKey(b);
                   });
}

std::string FormatCsv(std::span<const ResultRow> rows) {
  std::vector<ResultRow> sorted(rows.begin(), rows.end());
  SortRows(sorted);
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : sorted) {
    out += BaselineName(r.baseline);
    out += ',' + std::to_string(r.seed) + ',' + std::to_string(r.num_clients) +
           ',' + Sig6(r.epsilon) + ',' + Sig6(r.delta) + ',' + Sig6(r.clip_bound) +
           ',' + std::to_string(r.rounds) + ',' + std::to_string(r.exposures) +
           ',' + std::to_string(r.round) + ',' + Sig6(r.mean_test_accuracy) +
           ',' + Sig6(r.mean_hinge_loss) + '\n';
  }
  return out;
}

void EmitCsv(std::span<const ResultRow> rows, const std::filesystem::path& path) {
  if (rows.empty()) throw ConfigError("no rows to write");
  WriteFile(path, FormatCsv(rows));
}

std::vector<ResultRow> ParseCsv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = Trim(line);
    if (text.empty()) continue;
    if (line_no == 1) {
      if (text != kCsvHeader) throw ParseError(1, "unexpected CSV header");
      continue;
    }
    const auto f = SplitList(text);
    if (f.size() != 11) throw ParseError(line_no, "expected 11 fields");
    try {
      ResultRow r;
      r.baseline = ParseBaseline(f[0]);
      r.seed = ToInt<std::uint64_t>(f[1], "seed");
      r.num_clients = ToInt<int>(f[2], "V");
      r.epsilon = ToDouble(f[3], "epsilon");
      r.delta = ToDouble(f[4], "delta");
      r.clip_bound = ToDouble(f[5], "B");
      r.rounds = ToInt<int>(f[6], "T");
      r.exposures = ToInt<int>(f[7], "E");
      r.round = ToInt<int>(f[8], "round");
      r.mean_test_accuracy = ToDouble(f[9], "mean_test_accuracy");
      r.mean_hinge_loss = ToDouble(f[10], "mean_hinge_loss");
      rows.push_back(r);
    } catch (const ConfigError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return rows;
}

std::vector<ResultRow> LoadCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseCsv(in);
}

PlotSummary EmitPutPlot(std::span<const ResultRow> rows,
                        const std::filesystem::path& path) {
  // V -> epsilon -> per-seed final (accuracy, loss)
  std::map<int, std::map<double, std::vector<std::pair<double, double>>>> groups;
  std::vector<double> distinct;
  for (const auto& r : rows) {
    if (r.baseline != Baseline::kPrivate || r.round != r.rounds) continue;
    groups[r.num_clients][r.epsilon].emplace_back(r.mean_test_accuracy,
                                                  r.mean_hinge_loss);
    if (std::none_of(distinct.begin(), distinct.end(),
                     [&](double e) { return SameValue(e, r.epsilon); })) {
      distinct.push_back(r.epsilon);
    }
  }
  if (distinct.size() < 2) {
    throw ConfigError("PUT plot needs final-round private rows for at least two "
                      "distinct epsilon values");
  }

  PlotSummary summary;
  svg::Panel acc{"Diagnosis accuracy vs privacy level", "epsilon",
                 "final-round test accuracy", {}};
  svg::Panel loss{"Hinge loss vs privacy level", "epsilon",
                  "final-round hinge loss", {}};
  for (const auto& [v, by_eps] : groups) {
    svg::Series sa{"V=" + std::to_string(v), {}, {}, {}, {}, true};
    svg::Series sl = sa;
    for (const auto& [eps, vals] : by_eps) {
      double a_sum = 0, l_sum = 0;
      double a_lo = 1e300, a_hi = -1e300, l_lo = 1e300, l_hi = -1e300;
      for (const auto& [a, l] : vals) {
        a_sum += a;
        l_sum += l;
        a_lo = std::min(a_lo, a);
        a_hi = std::max(a_hi, a);
        l_lo = std::min(l_lo, l);
        l_hi = std::max(l_hi, l);
      }
      const double n = static_cast<double>(vals.size());
      sa.x.push_back(eps);
      sa.y.push_back(a_sum / n);
      sa.y_low.push_back(a_lo);
      sa.y_high.push_back(a_hi);
      sl.x.push_back(eps);
      sl.y.push_back(l_sum / n);
      sl.y_low.push_back(l_lo);
      sl.y_high.push_back(l_hi);
    }
    summary.series.push_back(sa.label);
    summary.points.push_back(sa.x.size());
    acc.series.push_back(std::move(sa));
    loss.series.push_back(std::move(sl));
  }
  WriteFile(path, svg::Render("Privacy-utility trade-off", {acc, loss}));
  return summary;
}

PlotSummary EmitEpochsPlot(std::span<const ResultRow> rows,
                           const std::filesystem::path& path,
                           std::optional<int> num_clients,
                           std::optional<double> epsilon) {
  if (!num_clients) {
    for (const auto& r : rows) {
      if (r.baseline == Baseline::kPrivate) {
        num_clients = std::max(num_clients.value_or(r.num_clients), r.num_clients);
      }
    }
  }
  if (!num_clients) throw ConfigError("epochs plot needs private rows");
  if (!epsilon) {
    for (const auto& r : rows) {
      if (r.baseline != Baseline::kPrivate || r.num_clients != *num_clients) continue;
      if (SameValue(r.epsilon, 25.0)) {
        epsilon = r.epsilon;
        break;
      }
      epsilon = std::max(epsilon.value_or(r.epsilon), r.epsilon);
    }
  }
  if (!epsilon) throw ConfigError("epochs plot needs private rows");

  PlotSummary summary;
  svg::Panel panel{"Accuracy vs rounds (V=" + std::to_string(*num_clients) +
                       ", epsilon=" + Sig6(*epsilon) + ")",
                   "communication round", "mean test accuracy", {}};
  bool have_private = false;
  for (Baseline b : {Baseline::kPrivate, Baseline::kNonprivateFederated,
                     Baseline::kCentralized}) {
    const auto selected = Select(rows, b, *num_clients, *epsilon);
    if (selected.empty()) {
      summary.warnings.push_back("no " + std::string(BaselineName(b)) +
                                 " rows for V=" + std::to_string(*num_clients) +
                                 ", epsilon=" + Sig6(*epsilon) +
                                 "; series omitted");
      continue;
    }
    if (b == Baseline::kPrivate) have_private = true;
    std::map<int, std::pair<double, int>> by_round;
    for (const ResultRow* r : selected) {
      auto& [sum, count] = by_round[r->round];
      sum += r->mean_test_accuracy;
      ++count;
    }
    svg::Series s{std::string(BaselineName(b)), {}, {}, {}, {}, false};
    for (const auto& [round, acc] : by_round) {
      s.x.push_back(round);
      s.y.push_back(acc.first / acc.second);
    }
    summary.series.push_back(s.label);
    summary.points.push_back(s.x.size());
    panel.series.push_back(std::move(s));
  }
  if (!have_private || panel.series.size() < 2) {
    throw ConfigError("epochs plot needs private rows and at least one baseline");
  }
  WriteFile(path, svg::Render("Private vs baseline training", {panel}));
  return summary;
}

std::optional<double> FinalAccuracy(std::span<const ResultRow> rows,
                                    Baseline baseline, int num_clients,
                                    double epsilon) {
  double sum = 0;
  int n = 0;
  for (const ResultRow* r : Select(rows, baseline, num_clients, epsilon)) {
    if (r->round != r->rounds) continue;
    sum += r->mean_test_accuracy;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

std::optional<double> AccuracyDeltaStd(std::span<const ResultRow> rows,
                                       Baseline baseline, int num_clients,
                                       double epsilon) {
  std::map<std::uint64_t, std::map<int, double>> by_seed;
  for (const ResultRow* r : Select(rows, baseline, num_clients, epsilon)) {
    by_seed[r->seed][r->round] = r->mean_test_accuracy;
  }
  std::vector<double> deltas;
  for (const auto& [seed, curve] : by_seed) {
    double prev = 0;
    bool first = true;
    for (const auto& [round, acc] : curve) {
      if (!first) deltas.push_back(acc - prev);
      prev = acc;
      first = false;
    }
  }
  if (deltas.size() < 2) return std::nullopt;
  double mean = 0;
  for (double d : deltas) mean += d;
  mean /= static_cast<double>(deltas.size());
  double ss = 0;
  for (double d : deltas) ss += (d - mean) * (d - mean);
  return std::sqrt(ss / static_cast<double>(deltas.size() - 1));
}

}  // namespace globaldp
