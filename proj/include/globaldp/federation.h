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

#ifndef GLOBALDP_FEDERATION_H_
#define GLOBALDP_FEDERATION_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "globaldp/dataset.h"
#include "globaldp/linear_model.h"
#include "globaldp/model_vector.h"
#include "globaldp/privacy.h"
#include "globaldp/rng.h"

namespace globaldp {

// One virtual clinic. `clipped` and `noise` hold the last round's pre-noise
// clipped model and the noise drawn for it; they never leave the client
// except through the upload `clipped + noise`.
struct ClientState {
  int client_id = 1;
  ClientShard shard;
  ModelVector model;
  std::uint64_t master_seed = 0;
  ModelVector clipped;
  ModelVector noise;
  double trained_norm = 0.0;
};

ClientState MakeClient(ClientShard shard, const ModelVector& initial,
                       std::uint64_t master_seed);

// Replaces the local model with `global`, trains, clips to `clip_bound` and
// adds N(0, sigma1^2) per coordinate. Returns the privatized upload. The
// training shuffle and the noise come from separate streams keyed by
// (master_seed, client_id, round).
ModelVector ClientStep(ClientState& state, const ModelVector& global,
                       const TrainConfig& cfg, double clip_bound,
                       double sigma1, int round);

struct Upload {
  double pi = 0.0;
  ModelVector model;
};

// sum_i pi_i * upload_i. Throws ProtocolError on mismatched sizes.
ModelVector WeightedSum(std::span<const Upload> uploads);

// WeightedSum plus N(0, sigma2^2) per coordinate when the plan
// calls for server noise.
ModelVector ServerAggregate(std::span<const Upload> uploads,
                            const NoisePlan& plan, Rng& rng);

struct ClientRoundRecord {
  int client_id = 0;
  double trained_norm = 0.0;    // before clipping
  double pre_noise_norm = 0.0;  // after clipping, <= B
  std::string clipped_hash;
  std::string upload_hash;
  EvalMetrics metrics;  // of the broadcast model on the shared test set
};

struct RoundTrace {
  int round = 0;
  std::vector<ClientRoundRecord> clients;
  std::string aggregated_hash;  // before server noise
  std::string broadcast_hash;
  bool sigma2_applied = false;
  double mean_accuracy = 0.0;
  double mean_hinge_loss = 0.0;
};

// Everything an honest-but-curious server sees or sends.
struct ObserverLog {
  enum class Direction { kReceived, kBroadcast };
  struct Entry {
    int round = 0;
    Direction direction = Direction::kReceived;
    int client_id = 0;  // 0 for broadcasts
    ModelVector vector;
  };
  std::vector<Entry> entries;
};

struct ProtocolResult {
  ModelVector final_model;
  std::vector<RoundTrace> traces;
  ObserverLog observer;
};

// The round loop with an explicit calibration: broadcast, client steps,
// aggregation and top-up noise, evaluation of the broadcast on split.test.
// A non-private FedAvg run is RunRounds with a zero plan and an infinite
// clip bound.
ProtocolResult RunRounds(const DatasetSplit& split, const NoisePlan& plan,
                         double clip_bound, int rounds, const TrainConfig& cfg,
                         std::uint64_t master_seed);

// Full private protocol: plans noise from `params` and the split, then runs
// params.rounds rounds from the zero model.
ProtocolResult RunProtocol(const DatasetSplit& split,
                           const PrivacyParams& params, const TrainConfig& cfg,
                           std::uint64_t master_seed);

// Field order: round, sigma2_applied, aggregated_hash, broadcast_hash,
// mean_accuracy, mean_hinge_loss, clients[{client_id, trained_norm,
// pre_noise_norm, clipped_hash, upload_hash, accuracy, hinge_loss,
// n_examples}].
std::string TraceToJsonLine(const RoundTrace& trace);
void WriteTraces(std::span<const RoundTrace> traces,
                 const std::filesystem::path& path);

}  // namespace globaldp

#endif  // GLOBALDP_FEDERATION_H_
