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

#ifndef GLOBALDP_DATASET_H_
#define GLOBALDP_DATASET_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace globaldp {

// Number of cytology attributes per record in the Wisconsin breast cancer
// data (clump thickness ... mitoses).
inline constexpr std::size_t kNumAttributes = 9;
inline constexpr int kBenignClass = 2;
inline constexpr int kMalignantClass = 4;

// One line of `breast-cancer-wisconsin.data`. Missing attributes ('?') are
// nullopt; every present attribute is in [1, 10].
struct RawRecord {
  std::int64_t sample_id = 0;
  std::array<std::optional<int>, kNumAttributes> attributes;
  int class_code = kBenignClass;

  bool HasMissing() const;
};

// Features in [0,1] and label -1 (benign) / +1 (malignant).
struct LabeledExample {
  std::vector<double> features;
  int label = -1;
};

struct ClientShard {
  int client_id = 1;  // 1-based
  std::vector<LabeledExample> train;
  double pi = 1.0;  // |train| / total training examples
};

struct DatasetSplit {
  std::vector<ClientShard> shards;
  std::vector<LabeledExample> test;
  std::size_t m = 0;  // smallest shard size

  int num_clients() const { return static_cast<int>(shards.size()); }
  std::vector<double> Weights() const;
  std::size_t NumTrain() const;
  // Shards concatenated in client order.
  std::vector<LabeledExample> PooledTrain() const;
};

// Parses the comma-separated UCI format: id, 9 attributes, class (2 or 4).
// Blank lines are skipped. Throws ParseError with a 1-based line number.
std::vector<RawRecord> ParseBcwd(std::istream& in);
std::vector<RawRecord> ParseBcwd(const std::filesystem::path& path);

struct CleanResult {
  std::vector<LabeledExample> examples;
  std::size_t dropped = 0;
};

// Drops records with any missing attribute, maps v -> (v - 1) / 9 and
// class 2 -> -1, 4 -> +1. Order is preserved.
CleanResult CleanAndNormalize(std::span<const RawRecord> records);

// Stratified shuffle, then ceil(test_fraction * N) examples go to the test
// set and the rest are dealt round-robin into `num_clients` shards whose sizes
// differ by at most one. Within the training pool the two classes are
// interleaved proportionally before dealing, so every shard sees roughly the
// global class balance. Deterministic in `seed`.
DatasetSplit SplitAndPartition(std::span<const LabeledExample> examples,
                               int num_clients, double test_fraction,
                               std::uint64_t seed);

}  // namespace globaldp

#endif  // GLOBALDP_DATASET_H_
