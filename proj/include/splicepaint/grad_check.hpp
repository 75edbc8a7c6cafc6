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

#include <functional>
#include <span>
#include <vector>

#include "splicepaint/autodiff.hpp"

namespace splicepaint {

// Builds a scalar-valued computation from the leaves it is handed.
using ScalarGraphFn = std::function<Var(Graph<double>&, std::span<const Var>)>;

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t worst_input = 0;
  std::size_t worst_element = 0;
  double analytic = 0.0;
  double numeric = 0.0;
};

// Compares reverse-mode gradients against central differences
// (f(x+h) - f(x-h)) / 2h for every element of every input. The relative error
// of each element uses max(|analytic|, |numeric|, 1e-8) as denominator.
GradCheckResult grad_check_detailed(const ScalarGraphFn& fn, const std::vector<Tensor<double>>& inputs,
                                    double h = 1e-5);

inline double grad_check(const ScalarGraphFn& fn, const std::vector<Tensor<double>>& inputs,
                         double h = 1e-5) {
  return grad_check_detailed(fn, inputs, h).max_relative_error;
}

}  // namespace splicepaint
