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

#include "globaldp/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <string>
#include <string_view>

#include "globaldp/errors.h"
#include "globaldp/rng.h"

namespace globaldp {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename Int>
bool ParseInt(std::string_view s, Int& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

bool RawRecord::HasMissing() const {
  return std::any_of(attributes.begin(), attributes.end(),
                     [](const auto& a) { return !a.has_value(); });
}

std::vector<double> DatasetSplit::Weights() const {
  std::vector<double> pi;
  pi.reserve(shards.size());
  for (const auto& s : shards) pi.push_back(s.pi);
  return pi;
}

std::size_t DatasetSplit::NumTrain() const {
  std::size_t n = 0;
  for (const auto& s : shards) n += s.train.size();
  return n;
}

std::vector<LabeledExample> DatasetSplit::PooledTrain() const {
  std::vector<LabeledExample> pooled;
  pooled.reserve(NumTrain());
  for (const auto& s : shards) {
    pooled.insert(pooled.end(), s.train.begin(), s.train.end());
  }
  return pooled;
}

std::vector<RawRecord> ParseBcwd(std::istream& in) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = Trim(line);
    if (text.empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      fields.push_back(Trim(text.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != kNumAttributes + 2) {
      throw ParseError(line_no, "expected 11 fields, got " +
                                    std::to_string(fields.size()));
    }

    RawRecord rec;
    if (!ParseInt(fields[0], rec.sample_id)) {
      throw ParseError(line_no, "sample id is not an integer");
    }
    for (std::size_t i = 0; i < kNumAttributes; ++i) {
      const auto field = fields[i + 1];
      if (field == "?") continue;
      int value = 0;
      if (!ParseInt(field, value)) {
        throw ParseError(line_no, "attribute " + std::to_string(i + 1) +
                                      " is not an integer");
      }
      if (value < 1 || value > 10) {
        throw ParseError(line_no, "attribute " + std::to_string(i + 1) +
                                      " outside [1,10]");
      }
      rec.attributes[i] = value;
    }
    if (!ParseInt(fields.back(), rec.class_code) ||
        (rec.class_code != kBenignClass &&
         rec.class_code != kMalignantClass)) {
      throw ParseError(line_no, "class must be 2 or 4");
    }
    records.push_back(rec);
  }
  return records;
}

std::vector<RawRecord> ParseBcwd(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset " + path.string());
  return ParseBcwd(in);
}

CleanResult CleanAndNormalize(std::span<const RawRecord> records) {
  CleanResult out;
  out.examples.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.HasMissing()) {
      ++out.dropped;
      continue;
    }
    LabeledExample ex;
    ex.features.reserve(kNumAttributes);
    for (const auto& a : rec.attributes) {
      ex.features.push_back((*a - 1) / 9.0);
    }
    ex.label = rec.class_code == kMalignantClass ? 1 : -1;
    out.examples.push_back(std::move(ex));
  }
  return out;
}

DatasetSplit SplitAndPartition(std::span<const LabeledExample> examples,
                               int num_clients, double test_fraction,
                               std::uint64_t seed) {
  if (num_clients < 1) throw ConfigError("number of clients must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test fraction must lie in (0,1)");
  }
  const std::size_t n = examples.size();
  const auto n_test =
      static_cast<std::size_t>(std::ceil(test_fraction * static_cast<double>(n)));
  if (n_test >= n || n - n_test < static_cast<std::size_t>(num_clients)) {
    throw ConfigError("V = " + std::to_string(num_clients) +
                      " exceeds the " + std::to_string(n > n_test ? n - n_test : 0) +
                      " available training examples");
  }

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < n; ++i) {
    (examples[i].label > 0 ? pos : neg).push_back(i);
  }
  Rng rng = MakeStream(seed, Stream::kSplit, 0, 0);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);

  const auto n_test_pos = static_cast<std::size_t>(std::llround(
      static_cast<double>(n_test) * static_cast<double>(pos.size()) /
      static_cast<double>(n)));
  const std::size_t n_test_neg = n_test - n_test_pos;

  DatasetSplit split;
  split.test.reserve(n_test);
  for (std::size_t i = 0; i < n_test_pos; ++i) split.test.push_back(examples[pos[i]]);
  for (std::size_t i = 0; i < n_test_neg; ++i) split.test.push_back(examples[neg[i]]);

  // Deal positives then negatives with one running counter: every shard gets
  // within one of its share of each class and sizes differ by at most one.
  std::vector<std::size_t> pool(pos.begin() + n_test_pos, pos.end());
  pool.insert(pool.end(), neg.begin() + n_test_neg, neg.end());

  split.shards.resize(static_cast<std::size_t>(num_clients));
  for (int v = 0; v < num_clients; ++v) split.shards[v].client_id = v + 1;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    split.shards[k % split.shards.size()].train.push_back(examples[pool[k]]);
  }
  const double total = static_cast<double>(pool.size());
  split.m = pool.size();
  for (auto& shard : split.shards) {
    shard.pi = static_cast<double>(shard.train.size()) / total;
    split.m = std::min(split.m, shard.train.size());
  }
  return split;
}

}  // namespace globaldp
