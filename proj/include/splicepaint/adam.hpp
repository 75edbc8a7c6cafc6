// Copyright 2026 The splicepaint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "splicepaint/tensor.hpp"

namespace splicepaint {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

template <typename T>
struct AdamState {
  Tensor<T> m;
  Tensor<T> v;
  std::uint64_t t = 0;
  AdamConfig config;

  AdamState() = default;
  AdamState(const Shape& shape, AdamConfig cfg) : m(shape), v(shape), config(cfg) {}
};

// Raised when training hits a NaN or infinity.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One bias-corrected Adam update of `param`. A gradient that is identically
// zero leaves the parameter and both moments untouched; the step counter
// still advances. Non-finite gradients are rejected before anything is
// modified.
template <typename T>
void adam_step(Tensor<T>& param, const Tensor<T>& grad, AdamState<T>& state,
               std::string_view name = "param");

extern template void adam_step<float>(Tensor<float>&, const Tensor<float>&, AdamState<float>&,
                                      std::string_view);
extern template void adam_step<double>(Tensor<double>&, const Tensor<double>&,
                                       AdamState<double>&, std::string_view);

}  // namespace splicepaint
