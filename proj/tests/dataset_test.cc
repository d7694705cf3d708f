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
#include <cmath>
#include <numeric>
#include <sstream>

#include "globaldp/errors.h"
#include "gtest/gtest.h"
#include "test_paths.h"

namespace globaldp {
namespace {

using ::globaldp::testing::BcwdPath;
using ::globaldp::testing::FixturePath;

const std::vector<LabeledExample>& Cleaned() {
  static const auto* examples = new std::vector<LabeledExample>(
      CleanAndNormalize(ParseBcwd(BcwdPath())).examples);
  return *examples;
}

std::size_t CountPositive(std::span<const LabeledExample> data) {
  return static_cast<std::size_t>(std::count_if(
      data.begin(), data.end(), [](const auto& e) { return e.label > 0; }));
}

// Order-free fingerprint of a bag of examples.
std::vector<std::pair<std::vector<double>, int>> Bag(
    std::span<const LabeledExample> data) {
  std::vector<std::pair<std::vector<double>, int>> bag;
  for (const auto& e : data) bag.emplace_back(e.features, e.label);
  std::sort(bag.begin(), bag.end());
  return bag;
}

TEST(ParseBcwdTest, FullFileHas699RecordsAnd683Complete) {
  const auto records = ParseBcwd(BcwdPath());
  ASSERT_EQ(records.size(), 699u);
  const auto complete = std::count_if(records.begin(), records.end(),
                                      [](const auto& r) { return !r.HasMissing(); });
  EXPECT_EQ(complete, 683);
  const auto malignant =
      std::count_if(records.begin(), records.end(),
                    [](const auto& r) { return r.class_code == kMalignantClass; });
  EXPECT_EQ(malignant, 241);
  EXPECT_EQ(static_cast<long>(records.size()) - malignant, 458);
}

TEST(ParseBcwdTest, FirstLine) {
  std::istringstream in("1000025,5,1,1,1,2,1,3,1,1,2\n");
  const auto records = ParseBcwd(in);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].sample_id, 1000025);
  const std::array<int, 9> expected = {5, 1, 1, 1, 2, 1, 3, 1, 1};
  for (std::size_t i = 0; i < 9; ++i) {
    ASSERT_TRUE(records[0].attributes[i].has_value());
    EXPECT_EQ(*records[0].attributes[i], expected[i]);
  }
  EXPECT_EQ(records[0].class_code, 2);
}

TEST(ParseBcwdTest, EmptyInput) {
  std::istringstream in("");
  EXPECT_TRUE(ParseBcwd(in).empty());
}

TEST(ParseBcwdTest, FixtureKeepsMissingRowsInOrder) {
  const auto records = ParseBcwd(FixturePath());
  ASSERT_EQ(records.size(), 10u);
  EXPECT_EQ(records.front().sample_id, 1000025);
  EXPECT_TRUE(records.back().HasMissing());
  EXPECT_FALSE(records.back().attributes[5].has_value());
  EXPECT_EQ(records.back().class_code, 4);
}

TEST(ParseBcwdTest, MalformedLinesReportLineNumber) {
  struct Case {
    const char* text;
    std::size_t line;
  };
  const Case cases[] = {
      {"1000025,5,1,1,1,2,1,3,1,1,2\n1,2,3\n", 2},
      {"1000025,5,1,1,1,2,1,3,1,1,2\n\n1000025,5,x,1,1,2,1,3,1,1,2\n", 3},
      {"1000025,5,1,1,1,2,1,3,1,1,3\n", 1},
      {"1000025,5,1,1,1,2,1,3,1,11,2\n", 1},
      {"abc,5,1,1,1,2,1,3,1,1,2\n", 1},
      {"1000025,5,1,1,1,2,1,3,1,1,?\n", 1},
  };
  for (const auto& c : cases) {
    std::istringstream in(c.text);
    try {
      ParseBcwd(in);
      ADD_FAILURE() << "no error for: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text;
    }
  }
}

TEST(ParseBcwdTest, MissingFileIsIoError) {
  EXPECT_THROW(ParseBcwd(std::filesystem::path("/nonexistent/bcwd.data")),
               IoError);
}

TEST(CleanAndNormalizeTest, FullFileCounts) {
  const auto clean = CleanAndNormalize(ParseBcwd(BcwdPath()));
  EXPECT_EQ(clean.examples.size(), 683u);
  EXPECT_EQ(clean.dropped, 16u);
  // The 458/241 benign/malignant split describes all 699 rows; the 683
  // complete rows split 444/239.
  EXPECT_EQ(CountPositive(clean.examples), 239u);
}

TEST(CleanAndNormalizeTest, AffineEndpointsAndLabels) {
  std::istringstream in(
      "1,1,1,1,1,1,1,1,1,1,2\n"
      "2,10,10,10,10,10,10,10,10,10,4\n"
      "3,1,?,1,1,1,1,1,1,1,4\n");
  const auto clean = CleanAndNormalize(ParseBcwd(in));
  ASSERT_EQ(clean.examples.size(), 2u);
  EXPECT_EQ(clean.dropped, 1u);
  for (double f : clean.examples[0].features) EXPECT_EQ(f, 0.0);
  for (double f : clean.examples[1].features) EXPECT_EQ(f, 1.0);
  EXPECT_EQ(clean.examples[0].label, -1);
  EXPECT_EQ(clean.examples[1].label, 1);
}

TEST(CleanAndNormalizeTest, FeaturesInUnitInterval) {
  for (const auto& e : Cleaned()) {
    ASSERT_EQ(e.features.size(), kNumAttributes);
    for (double f : e.features) {
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0);
    }
    EXPECT_TRUE(e.label == 1 || e.label == -1);
  }
}

TEST(SplitAndPartitionTest, TwentyClientSizes) {
  const auto split = SplitAndPartition(Cleaned(), 20, 0.2, 7);
  EXPECT_EQ(split.test.size(), 137u);
  ASSERT_EQ(split.shards.size(), 20u);
  int n27 = 0, n28 = 0;
  for (const auto& s : split.shards) {
    if (s.train.size() == 27) ++n27;
    if (s.train.size() == 28) ++n28;
  }
  EXPECT_EQ(n27, 14);
  EXPECT_EQ(n28, 6);
  EXPECT_EQ(split.m, 27u);
  EXPECT_EQ(split.NumTrain(), 546u);
}

TEST(SplitAndPartitionTest, SingleClientGetsEverything) {
  const auto split = SplitAndPartition(Cleaned(), 1, 0.2, 3);
  ASSERT_EQ(split.shards.size(), 1u);
  EXPECT_EQ(split.shards[0].pi, 1.0);
  EXPECT_EQ(split.shards[0].train.size(), 546u);
  EXPECT_EQ(split.m, 546u);
}

TEST(SplitAndPartitionTest, DeterministicInSeed) {
  const auto a = SplitAndPartition(Cleaned(), 10, 0.2, 42);
  const auto b = SplitAndPartition(Cleaned(), 10, 0.2, 42);
  ASSERT_EQ(a.shards.size(), b.shards.size());
  for (std::size_t i = 0; i < a.shards.size(); ++i) {
    ASSERT_EQ(a.shards[i].train.size(), b.shards[i].train.size());
    for (std::size_t j = 0; j < a.shards[i].train.size(); ++j) {
      EXPECT_EQ(a.shards[i].train[j].features, b.shards[i].train[j].features);
      EXPECT_EQ(a.shards[i].train[j].label, b.shards[i].train[j].label);
    }
  }
  const auto c = SplitAndPartition(Cleaned(), 10, 0.2, 43);
  EXPECT_NE(Bag(a.test), Bag(c.test));
}

TEST(SplitAndPartitionTest, PartitionInvariants) {
  const auto& data = Cleaned();
  const double global_pos =
      static_cast<double>(CountPositive(data)) / static_cast<double>(data.size());
  for (int v : {1, 2, 5, 10, 13, 20}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto split = SplitAndPartition(data, v, 0.2, seed);

      // Shards and test set form a partition of the cleaned data.
      std::vector<LabeledExample> all = split.test;
      for (const auto& s : split.shards) {
        all.insert(all.end(), s.train.begin(), s.train.end());
      }
      EXPECT_EQ(Bag(all), Bag(data));

      double pi_sum = 0, pi_min = 1, pi_max = 0;
      std::size_t min_size = data.size(), max_size = 0;
      for (const auto& s : split.shards) {
        pi_sum += s.pi;
        pi_min = std::min(pi_min, s.pi);
        pi_max = std::max(pi_max, s.pi);
        min_size = std::min(min_size, s.train.size());
        max_size = std::max(max_size, s.train.size());
        const double pos = static_cast<double>(CountPositive(s.train)) /
                           static_cast<double>(s.train.size());
        EXPECT_LE(std::abs(pos - global_pos), 0.15)
            << "V=" << v << " seed=" << seed << " client " << s.client_id;
      }
      EXPECT_NEAR(pi_sum, 1.0, 1e-12);
      EXPECT_LE(pi_max - pi_min,
                1.0 / static_cast<double>(split.NumTrain()) + 1e-15);
      EXPECT_LE(max_size - min_size, 1u);
      EXPECT_EQ(split.m, min_size);
    }
  }
}

TEST(SplitAndPartitionTest, TestSetIsStratified) {
  const auto split = SplitAndPartition(Cleaned(), 5, 0.2, 11);
  // round(137 * 239 / 683) = 48 malignant test examples.
  EXPECT_EQ(CountPositive(split.test), 48u);
}

TEST(SplitAndPartitionTest, RejectsBadConfiguration) {
  EXPECT_THROW(SplitAndPartition(Cleaned(), 547, 0.2, 0), ConfigError);
  EXPECT_NO_THROW(SplitAndPartition(Cleaned(), 546, 0.2, 0));
  EXPECT_THROW(SplitAndPartition(Cleaned(), 0, 0.2, 0), ConfigError);
  EXPECT_THROW(SplitAndPartition(Cleaned(), 5, 0.0, 0), ConfigError);
  EXPECT_THROW(SplitAndPartition(Cleaned(), 5, 1.0, 0), ConfigError);
}

}  // namespace
}  // namespace globaldp
