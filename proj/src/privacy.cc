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

#include "globaldp/privacy.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "globaldp/errors.h"

namespace globaldp {

void PrivacyParams::Validate() const {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  if (!(clip_bound > 0.0)) throw DomainError("clip bound B must be > 0");
  if (rounds < 1) throw DomainError("rounds T must be >= 1");
  if (exposures < 1 || exposures > rounds) {
    throw DomainError("exposures E must satisfy 1 <= E <= T");
  }
}

double CFactor(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in (0,1), got " + std::to_string(delta));
  }
  return std::sqrt(2.0 * std::log(1.25 / delta));
}

ModelVector Clip(const ModelVector& w, double bound) {
  if (!(bound > 0.0)) throw DomainError("clip bound must be > 0");
  const double scale = std::max(1.0, w.Norm() / bound);
  if (scale == 1.0) return w;
  ModelVector out = w;
  for (double& v : out.values()) v /= scale;
  // Division can round the norm a few ulps above the bound; shrink until it
  // is at or below so the result is a fixed point of Clip.
  while (out.Norm() > bound) {
    for (double& v : out.values()) v *= 1.0 - 0x1p-52;
  }
  return out;
}

double UplinkSensitivity(double clip_bound, std::size_t dataset_size) {
  if (dataset_size == 0) throw DomainError("dataset size must be >= 1");
  if (!(clip_bound > 0.0)) throw DomainError("clip bound must be > 0");
  return 2.0 * clip_bound / static_cast<double>(dataset_size);
}

double DownlinkSensitivity(double clip_bound, double pi, std::size_t m) {
  if (!(pi > 0.0 && pi <= 1.0)) throw DomainError("pi must lie in (0,1]");
  if (m == 0) throw DomainError("m must be >= 1");
  if (!(clip_bound > 0.0)) throw DomainError("clip bound must be > 0");
  return 2.0 * clip_bound * pi / static_cast<double>(m);
}

bool ServerNoiseRequired(int rounds, int exposures, int num_clients) {
  const auto t = static_cast<std::int64_t>(rounds);
  const auto e = static_cast<std::int64_t>(exposures);
  return t * t > e * e * static_cast<std::int64_t>(num_clients);
}

NoisePlan PlanNoise(const PrivacyParams& params, int num_clients,
                    std::size_t m, std::span<const double> pi) {
  params.Validate();
  if (num_clients < 1) throw DomainError("V must be >= 1");
  if (m == 0) throw DomainError("m must be >= 1");
  if (pi.size() != static_cast<std::size_t>(num_clients)) {
    throw DomainError("need one weight per client");
  }
  const double pi_sum = std::accumulate(pi.begin(), pi.end(), 0.0);
  if (std::abs(pi_sum - 1.0) > 1e-9) throw DomainError("weights must sum to 1");

  const double B = params.clip_bound;
  const double eps = params.epsilon;
  NoisePlan plan;
  plan.c = CFactor(params.delta);
  plan.s_sharing = UplinkSensitivity(B, m);
  plan.sigma1 = plan.c * params.exposures * plan.s_sharing / eps;
  for (double p : pi) {
    plan.s_broadcast = std::max(plan.s_broadcast, DownlinkSensitivity(B, p, m));
  }
  plan.sigma = plan.c * params.rounds * plan.s_broadcast / eps;
  if (ServerNoiseRequired(params.rounds, params.exposures, num_clients)) {
    const double client_var = plan.sigma1 * plan.sigma1 / num_clients;
    plan.sigma2 = std::sqrt(std::max(0.0, plan.sigma * plan.sigma - client_var));
  }
  return plan;
}

ModelVector GaussianPerturb(const ModelVector& w, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw DomainError("noise scale must be >= 0");
  if (sigma == 0.0) return w;
  std::normal_distribution<double> noise(0.0, sigma);
  ModelVector out = w;
  for (double& v : out.values()) v += noise(rng);
  return out;
}

double StandardNormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double AnalyticGaussianDelta(double sensitivity, double sigma, double epsilon) {
  if (!(sensitivity > 0.0 && sigma > 0.0 && epsilon > 0.0)) {
    throw DomainError("sensitivity, sigma and epsilon must be > 0");
  }
  const double a = sensitivity / (2.0 * sigma);
  const double b = epsilon * sigma / sensitivity;
  const double first = StandardNormalCdf(a - b);
  // e^eps * Phi(-a - b) in log space so large epsilon cannot overflow.
  const double tail = StandardNormalCdf(-a - b);
  const double second = tail > 0.0 ? std::exp(epsilon + std::log(tail)) : 0.0;
  return std::max(0.0, first - second);
}

bool DpBoundCheck(double sensitivity, double sigma, double epsilon,
                  double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be > 0");
  return AnalyticGaussianDelta(sensitivity, sigma, epsilon) <= delta;
}

}  // namespace globaldp
