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

#ifndef GLOBALDP_PRIVACY_H_
#define GLOBALDP_PRIVACY_H_

#include <cstddef>
#include <span>

#include "globaldp/model_vector.h"
#include "globaldp/rng.h"

namespace globaldp {

struct PrivacyParams {
  double epsilon = 20.0;
  double delta = 0.01;
  double clip_bound = 1.0;  // B
  int rounds = 50;          // T
  int exposures = 50;       // E, 1 <= E <= T

  // Throws DomainError.
  void Validate() const;
};

// Noise calibration for one run. All scales are standard deviations.
struct NoisePlan {
  double c = 0.0;
  double s_sharing = 0.0;    // 2B / m
  double sigma1 = 0.0;       // client upload noise, c E s_sharing / eps
  double s_broadcast = 0.0;  // max_i 2B pi_i / m
  double sigma = 0.0;        // target downlink noise, c T s_broadcast / eps
  double sigma2 = 0.0;       // server top-up noise

  bool server_noise_active() const { return sigma2 > 0.0; }
};

// Smallest admissible Gaussian-mechanism constant sqrt(2 ln(1.25 / delta)).
double CFactor(double delta);

// w / max(1, ||w|| / bound). An infinite bound disables clipping.
ModelVector Clip(const ModelVector& w, double bound);

// 2B / |D_i|. Passing the smallest shard size gives S_sharing.
double UplinkSensitivity(double clip_bound, std::size_t dataset_size);

// 2B pi_i / m.
double DownlinkSensitivity(double clip_bound, double pi, std::size_t m);

// T > E sqrt(V), evaluated exactly as T^2 > E^2 V.
bool ServerNoiseRequired(int rounds, int exposures, int num_clients);

// Builds the full calibration. sigma2 = sqrt(sigma^2 - sigma1^2 / V) when
// T > E sqrt(V) and 0 otherwise; under uniform pi this is
//   2 B c sqrt(T^2 - E^2 V) / (V m eps).
NoisePlan PlanNoise(const PrivacyParams& params, int num_clients,
                    std::size_t m, std::span<const double> pi);

// Adds i.i.d. N(0, sigma^2) to every coordinate, bias included. sigma == 0
// returns the input untouched and consumes no randomness.
ModelVector GaussianPerturb(const ModelVector& w, double sigma, Rng& rng);

double StandardNormalCdf(double x);

// Smallest delta for which the Gaussian mechanism with this sensitivity and
// noise scale is (epsilon, delta)-DP:
//   Phi(D/(2s) - eps s/D) - e^eps Phi(-D/(2s) - eps s/D).
double AnalyticGaussianDelta(double sensitivity, double sigma, double epsilon);

bool DpBoundCheck(double sensitivity, double sigma, double epsilon,
                  double delta);

}  // namespace globaldp

#endif  // GLOBALDP_PRIVACY_H_
