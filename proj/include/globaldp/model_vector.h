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

#ifndef GLOBALDP_MODEL_VECTOR_H_
#define GLOBALDP_MODEL_VECTOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace globaldp {

// Linear model parameters laid out as [w_1, ..., w_d, b]. Norms, clipping and
// noise always act on the full concatenated vector, bias included.
class ModelVector {
 public:
  ModelVector() = default;
  explicit ModelVector(std::vector<double> values)
      : values_(std::move(values)) {}
  ModelVector(std::initializer_list<double> values) : values_(values) {}

  // All-zero model for `num_features` weights plus a bias.
  static ModelVector Zeros(std::size_t num_features) {
    return ModelVector(std::vector<double>(num_features + 1, 0.0));
  }

  std::size_t size() const { return values_.size(); }
  std::size_t num_features() const {
    return values_.empty() ? 0 : values_.size() - 1;
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::span<const double> weights() const {
    return values().first(num_features());
  }
  double bias() const { return values_.back(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  double Norm() const;
  bool IsFinite() const;

  friend bool operator==(const ModelVector&, const ModelVector&) = default;

 private:
  std::vector<double> values_;
};

double Dot(std::span<const double> a, std::span<const double> b);
double L2Norm(std::span<const double> v);

// 64-bit FNV-1a over the IEEE-754 bytes, rendered as 16 hex digits. Stable
// across runs and platforms with the same endianness.
std::string ModelHash(const ModelVector& w);

}  // namespace globaldp

#endif  // GLOBALDP_MODEL_VECTOR_H_
