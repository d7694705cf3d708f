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

#include "globaldp/federation.h"

#include <cmath>
#include <fstream>
#include <limits>

#include "globaldp/errors.h"
#include "json.hpp"

namespace globaldp {

ClientState MakeClient(ClientShard shard, const ModelVector& initial,
                       std::uint64_t master_seed) {
  ClientState state;
  state.client_id = shard.client_id;
  state.shard = std::move(shard);
  state.model = initial;
  state.master_seed = master_seed;
  return state;
}

ModelVector ClientStep(ClientState& state, const ModelVector& global,
                       const TrainConfig& cfg, double clip_bound,
                       double sigma1, int round) {
  if (!(sigma1 >= 0.0)) throw DomainError("sigma1 must be >= 0");
  const auto id = static_cast<std::uint64_t>(state.client_id);
  const auto t = static_cast<std::uint64_t>(round);

  Rng train_rng = MakeStream(state.master_seed, Stream::kLocalTrain, id, t);
  state.model = LocalTrain(global, state.shard.train, cfg, train_rng);
  state.trained_norm = state.model.Norm();
  state.clipped = Clip(state.model, clip_bound);

  Rng noise_rng = MakeStream(state.master_seed, Stream::kClientNoise, id, t);
  state.noise = GaussianPerturb(
      ModelVector(std::vector<double>(state.clipped.size(), 0.0)), sigma1,
      noise_rng);
  ModelVector upload = state.clipped;
  for (std::size_t j = 0; j < upload.size(); ++j) upload[j] += state.noise[j];
  if (!upload.IsFinite()) {
    throw ProtocolError("client " + std::to_string(state.client_id) +
                            " produced a non-finite model",
                        round);
  }
  return upload;
}

ModelVector WeightedSum(std::span<const Upload> uploads) {
  if (uploads.empty()) throw ProtocolError("no uploads to aggregate");
  const std::size_t dim = uploads.front().model.size();
  ModelVector sum(std::vector<double>(dim, 0.0));
  for (const auto& up : uploads) {
    if (up.model.size() != dim) {
      throw ProtocolError("upload size " + std::to_string(up.model.size()) +
                          " differs from " + std::to_string(dim));
    }
    for (std::size_t j = 0; j < dim; ++j) sum[j] += up.pi * up.model[j];
  }
  return sum;
}

ModelVector ServerAggregate(std::span<const Upload> uploads,
                            const NoisePlan& plan, Rng& rng) {
  ModelVector sum = WeightedSum(uploads);
  if (!plan.server_noise_active()) return sum;
  return GaussianPerturb(sum, plan.sigma2, rng);
}

ProtocolResult RunRounds(const DatasetSplit& split, const NoisePlan& plan,
                         double clip_bound, int rounds, const TrainConfig& cfg,
                         std::uint64_t master_seed) {
  if (split.shards.empty()) throw ConfigError("split has no shards");
  if (split.test.empty()) throw ConfigError("split has no test examples");
  if (rounds < 1) throw ConfigError("rounds must be >= 1");
  cfg.Validate();

  const std::size_t d = split.test.front().features.size();
  ProtocolResult result;
  result.final_model = ModelVector::Zeros(d);

  std::vector<ClientState> clients;
  clients.reserve(split.shards.size());
  for (const auto& shard : split.shards) {
    clients.push_back(MakeClient(shard, result.final_model, master_seed));
  }

  for (int t = 1; t <= rounds; ++t) {
    RoundTrace trace;
    trace.round = t;
    std::vector<Upload> uploads;
    uploads.reserve(clients.size());
    try {
      for (auto& client : clients) {
        uploads.push_back({client.shard.pi,
                           ClientStep(client, result.final_model, cfg,
                                      clip_bound, plan.sigma1, t)});
        result.observer.entries.push_back(
            {t, ObserverLog::Direction::kReceived, client.client_id,
             uploads.back().model});
      }
      Rng server_rng = MakeStream(master_seed, Stream::kServerNoise, 0,
                                  static_cast<std::uint64_t>(t));
      trace.aggregated_hash = ModelHash(WeightedSum(uploads));
      result.final_model = ServerAggregate(uploads, plan, server_rng);
    } catch (const ProtocolError& e) {
      if (e.round() > 0) throw;
      throw ProtocolError(e.what(), t);
    } catch (const std::exception& e) {
      throw ProtocolError(e.what(), t);
    }
    if (!result.final_model.IsFinite()) {
      throw ProtocolError("broadcast model is not finite", t);
    }
    trace.sigma2_applied = plan.server_noise_active();
    trace.broadcast_hash = ModelHash(result.final_model);
    result.observer.entries.push_back(
        {t, ObserverLog::Direction::kBroadcast, 0, result.final_model});

    // Every clinic evaluates the broadcast on the shared held-out set.
    for (std::size_t i = 0; i < clients.size(); ++i) {
      ClientRoundRecord rec;
      rec.client_id = clients[i].client_id;
      rec.trained_norm = clients[i].trained_norm;
      rec.pre_noise_norm = clients[i].clipped.Norm();
      rec.clipped_hash = ModelHash(clients[i].clipped);
      rec.upload_hash = ModelHash(uploads[i].model);
      rec.metrics = Evaluate(result.final_model, split.test);
      trace.mean_accuracy += rec.metrics.accuracy;
      trace.mean_hinge_loss += rec.metrics.hinge_loss;
      trace.clients.push_back(std::move(rec));
    }
    trace.mean_accuracy /= static_cast<double>(clients.size());
    trace.mean_hinge_loss /= static_cast<double>(clients.size());
    result.traces.push_back(std::move(trace));
  }
  return result;
}

ProtocolResult RunProtocol(const DatasetSplit& split,
                           const PrivacyParams& params, const TrainConfig& cfg,
                           std::uint64_t master_seed) {
  const NoisePlan plan =
      PlanNoise(params, split.num_clients(), split.m, split.Weights());
  return RunRounds(split, plan, params.clip_bound, params.rounds, cfg,
                   master_seed);
}

std::string TraceToJsonLine(const RoundTrace& trace) {
  nlohmann::ordered_json j;
  j["round"] = trace.round;
  j["sigma2_applied"] = trace.sigma2_applied;
  j["aggregated_hash"] = trace.aggregated_hash;
  j["broadcast_hash"] = trace.broadcast_hash;
  j["mean_accuracy"] = trace.mean_accuracy;
  j["mean_hinge_loss"] = trace.mean_hinge_loss;
  auto& clients = j["clients"];
  clients = nlohmann::ordered_json::array();
  for (const auto& c : trace.clients) {
    nlohmann::ordered_json cj;
    cj["client_id"] = c.client_id;
    cj["trained_norm"] = c.trained_norm;
    cj["pre_noise_norm"] = c.pre_noise_norm;
    cj["clipped_hash"] = c.clipped_hash;
    cj["upload_hash"] = c.upload_hash;
    cj["accuracy"] = c.metrics.accuracy;
    cj["hinge_loss"] = c.metrics.hinge_loss;
    cj["n_examples"] = c.metrics.n_examples;
    clients.push_back(std::move(cj));
  }
  return j.dump();
}

void WriteTraces(std::span<const RoundTrace> traces,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& t : traces) out << TraceToJsonLine(t) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace globaldp
