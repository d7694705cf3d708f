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

#ifndef GLOBALDP_LINEAR_MODEL_H_
#define GLOBALDP_LINEAR_MODEL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "globaldp/dataset.h"
#include "globaldp/model_vector.h"
#include "globaldp/rng.h"

namespace globaldp {

struct TrainConfig {
  int local_epochs = 5;
  double learning_rate = 0.05;
  double lr_decay = 0.98;  // multiplier applied after every local epoch
  double l2_lambda = 1e-3;

  // Throws ConfigError.
  void Validate() const;
};

struct EvalMetrics {
  double accuracy = 0.0;
  double hinge_loss = 0.0;
  std::size_t n_examples = 0;
  std::size_t correct = 0;
};

// w^T x + b.
double Decision(const ModelVector& w, std::span<const double> features);

// Mean hinge loss plus (l2_lambda / 2) * ||weights||^2. The bias is not
// regularized.
double HingeObjective(const ModelVector& w,
                      std::span<const LabeledExample> data, double l2_lambda);

// Subgradient of the single-example objective
//   max(0, 1 - y (w^T x + b)) + (l2_lambda / 2) ||weights||^2.
// At the kink (margin exactly 1) the hinge part is taken as zero.
ModelVector HingeSubgradient(const ModelVector& w, const LabeledExample& ex,
                             double l2_lambda);

// Primal linear SVM by per-example subgradient descent. Each epoch visits the
// data in a fresh shuffle drawn from `rng`; the step size starts at
// cfg.learning_rate and is multiplied by cfg.lr_decay after every epoch.
ModelVector LocalTrain(ModelVector w, std::span<const LabeledExample> data,
                       const TrainConfig& cfg, Rng& rng);

// Margin exactly 0 predicts +1. hinge_loss is the unregularized mean hinge.
EvalMetrics Evaluate(const ModelVector& w,
                     std::span<const LabeledExample> data);

struct LeakageResult {
  std::vector<double> gradient;
  double cosine = 0.0;  // |cos(gradient, x)|; 0 when the gradient vanishes
};

// Gradient x * (y - w^T x) of the least-squares loss |y - w^T x|^2 (up to the
// constant factor, no bias) and its alignment with the raw input. Whenever the
// residual is nonzero the shared gradient is a scalar multiple of x.
LeakageResult LeakageDemo(std::span<const double> w, std::span<const double> x,
                          double y);

}  // namespace globaldp

#endif  // GLOBALDP_LINEAR_MODEL_H_
