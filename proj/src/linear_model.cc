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

#include "globaldp/linear_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "globaldp/errors.h"

namespace globaldp {
namespace {

void CheckData(const ModelVector& w, std::span<const LabeledExample> data,
               const char* what) {
  if (data.empty()) throw DomainError(std::string(what) + ": empty data");
  for (const auto& ex : data) {
    if (ex.features.size() != w.num_features() || w.size() == 0) {
      throw DomainError(std::string(what) + ": example has " +
                        std::to_string(ex.features.size()) +
                        " features, model expects " +
                        std::to_string(w.num_features()));
    }
  }
}

}  // namespace

void TrainConfig::Validate() const {
  if (local_epochs < 1) throw ConfigError("local_epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (!(lr_decay > 0.0 && lr_decay <= 1.0)) {
    throw ConfigError("lr_decay must lie in (0,1]");
  }
  if (!(l2_lambda >= 0.0)) throw ConfigError("l2_lambda must be >= 0");
}

double Decision(const ModelVector& w, std::span<const double> features) {
  return Dot(w.weights(), features) + w.bias();
}

double HingeObjective(const ModelVector& w,
                      std::span<const LabeledExample> data, double l2_lambda) {
  CheckData(w, data, "hinge objective");
  double hinge = 0.0;
  for (const auto& ex : data) {
    hinge += std::max(0.0, 1.0 - ex.label * Decision(w, ex.features));
  }
  const double reg = Dot(w.weights(), w.weights());
  return hinge / static_cast<double>(data.size()) + 0.5 * l2_lambda * reg;
}

ModelVector HingeSubgradient(const ModelVector& w, const LabeledExample& ex,
                             double l2_lambda) {
  const LabeledExample* one = &ex;
  CheckData(w, std::span<const LabeledExample>(one, 1), "hinge subgradient");
  ModelVector g(std::vector<double>(w.size(), 0.0));
  const std::size_t d = w.num_features();
  for (std::size_t j = 0; j < d; ++j) g[j] = l2_lambda * w[j];
  if (ex.label * Decision(w, ex.features) < 1.0) {
    for (std::size_t j = 0; j < d; ++j) g[j] -= ex.label * ex.features[j];
    g[d] -= ex.label;
  }
  return g;
}

ModelVector LocalTrain(ModelVector w, std::span<const LabeledExample> data,
                       const TrainConfig& cfg, Rng& rng) {
  CheckData(w, data, "local training");
  cfg.Validate();
  const std::size_t d = w.num_features();
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  double lr = cfg.learning_rate;
  for (int epoch = 0; epoch < cfg.local_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t idx : order) {
      const LabeledExample& ex = data[idx];
      const bool active = ex.label * Decision(w, ex.features) < 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        double g = cfg.l2_lambda * w[j];
        if (active) g -= ex.label * ex.features[j];
        w[j] -= lr * g;
      }
      if (active) w[d] += lr * ex.label;
    }
    lr *= cfg.lr_decay;
  }
  return w;
}

EvalMetrics Evaluate(const ModelVector& w,
                     std::span<const LabeledExample> data) {
  CheckData(w, data, "evaluation");
  EvalMetrics m;
  m.n_examples = data.size();
  double hinge = 0.0;
  for (const auto& ex : data) {
    const double score = Decision(w, ex.features);
    const int predicted = score >= 0.0 ? 1 : -1;
    if (predicted == ex.label) ++m.correct;
    hinge += std::max(0.0, 1.0 - ex.label * score);
  }
  m.accuracy =
      static_cast<double>(m.correct) / static_cast<double>(m.n_examples);
  m.hinge_loss = hinge / static_cast<double>(m.n_examples);
  return m;
}

LeakageResult LeakageDemo(std::span<const double> w, std::span<const double> x,
                          double y) {
  if (w.size() != x.size()) throw DomainError("leakage demo: size mismatch");
  const double x_norm = L2Norm(x);
  if (x_norm == 0.0) throw DomainError("leakage demo: x must be nonzero");

  const double residual = y - Dot(w, x);
  LeakageResult out;
  out.gradient.reserve(x.size());
  for (double xi : x) out.gradient.push_back(xi * residual);
  const double g_norm = L2Norm(out.gradient);
  if (g_norm > 0.0) {
    out.cosine = std::min(1.0, std::abs(Dot(out.gradient, x)) / (g_norm * x_norm));
  }
  return out;
}

}  // namespace globaldp
