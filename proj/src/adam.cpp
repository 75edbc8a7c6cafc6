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

#include "splicepaint/adam.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace splicepaint {

void AdamConfig::validate() const {
  if (!(lr > 0) || !std::isfinite(lr)) throw std::invalid_argument(fmt::format("adam: lr must be positive, got {}", lr));
  if (!(beta1 >= 0 && beta1 < 1)) throw std::invalid_argument(fmt::format("adam: beta1 must be in [0,1), got {}", beta1));
  if (!(beta2 >= 0 && beta2 < 1)) throw std::invalid_argument(fmt::format("adam: beta2 must be in [0,1), got {}", beta2));
  if (!(epsilon > 0)) throw std::invalid_argument(fmt::format("adam: epsilon must be positive, got {}", epsilon));
}

template <typename T>
void adam_step(Tensor<T>& param, const Tensor<T>& grad, AdamState<T>& state, std::string_view name) {
  if (grad.shape() != param.shape() || state.m.shape() != param.shape() ||
      state.v.shape() != param.shape()) {
    throw std::invalid_argument(fmt::format(
        "adam_step({}): shape mismatch param {} grad {} m {} v {}", name, shape_string(param.shape()),
        shape_string(grad.shape()), shape_string(state.m.shape()), shape_string(state.v.shape())));
  }
  if (!grad.all_finite()) {
    throw NumericalError(fmt::format("adam_step: non-finite gradient for parameter '{}'", name));
  }
  ++state.t;
  const auto g = grad.data();
  if (std::all_of(g.begin(), g.end(), [](T v) { return v == T{0}; })) return;

  const AdamConfig& c = state.config;
  const double t = static_cast<double>(state.t);
  const double correct1 = 1.0 - std::pow(c.beta1, t);
  const double correct2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double gi = g[i];
    const double m = c.beta1 * state.m[i] + (1.0 - c.beta1) * gi;
    const double v = c.beta2 * state.v[i] + (1.0 - c.beta2) * gi * gi;
    state.m[i] = static_cast<T>(m);
    state.v[i] = static_cast<T>(v);
    const double m_hat = m / correct1;
    const double v_hat = v / correct2;
    param[i] = static_cast<T>(param[i] - c.lr * m_hat / (std::sqrt(v_hat) + c.epsilon));
  }
}

template void adam_step<float>(Tensor<float>&, const Tensor<float>&, AdamState<float>&, std::string_view);
template void adam_step<double>(Tensor<double>&, const Tensor<double>&, AdamState<double>&,
                                std::string_view);

}  // namespace splicepaint
