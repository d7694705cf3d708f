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

// Plain FedAvg written against raw vectors, used as a reference for the
// zero-noise protocol. Shares only the seed derivation with the library.

#ifndef GLOBALDP_TESTS_FEDAVG_ORACLE_H_
#define GLOBALDP_TESTS_FEDAVG_ORACLE_H_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "globaldp/dataset.h"
#include "globaldp/rng.h"

namespace globaldp::testing {

struct OracleConfig {
  int epochs = 5;
  double lr = 0.05;
  double decay = 0.98;
  double lambda = 1e-3;
};

// Returns the global model after every round; last coordinate is the bias.
inline std::vector<std::vector<double>> OracleFedAvg(
    const DatasetSplit& split, int rounds, const OracleConfig& cfg,
    std::uint64_t seed) {
  const std::size_t d = split.test.front().features.size();
  std::vector<double> global(d + 1, 0.0);
  std::vector<std::vector<double>> history;
  for (int t = 1; t <= rounds; ++t) {
    std::vector<double> next(d + 1, 0.0);
    for (const auto& shard : split.shards) {
      std::vector<double> w = global;
      std::mt19937_64 rng(DeriveSeed(seed, Stream::kLocalTrain,
                                     static_cast<std::uint64_t>(shard.client_id),
                                     static_cast<std::uint64_t>(t)));
      std::vector<std::size_t> order(shard.train.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      double lr = cfg.lr;
      for (int e = 0; e < cfg.epochs; ++e) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) {
          const auto& x = shard.train[i].features;
          const double y = shard.train[i].label;
          double score = 0.0;
          for (std::size_t j = 0; j < d; ++j) score += w[j] * x[j];
          score += w[d];
          const bool hinge = y * score < 1.0;
          for (std::size_t j = 0; j < d; ++j) {
            double g = cfg.lambda * w[j];
            if (hinge) g -= y * x[j];
            w[j] -= lr * g;
          }
          if (hinge) w[d] += lr * y;
        }
        lr *= cfg.decay;
      }
      for (std::size_t j = 0; j <= d; ++j) next[j] += shard.pi * w[j];
    }
    global = next;
    history.push_back(global);
  }
  return history;
}

}  // namespace globaldp::testing

#endif  // GLOBALDP_TESTS_FEDAVG_ORACLE_H_
