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

#include "splicepaint/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace splicepaint {
namespace {

double evaluate(const ScalarGraphFn& fn, const std::vector<Tensor<double>>& inputs) {
  Graph<double> g;
  std::vector<Var> leaves;
  leaves.reserve(inputs.size());
  for (const auto& t : inputs) leaves.push_back(g.leaf(t, false));
  return g.value(fn(g, leaves))[0];
}

}  // namespace

GradCheckResult grad_check_detailed(const ScalarGraphFn& fn, const std::vector<Tensor<double>>& inputs,
                                    double h) {
  if (!(h > 0)) throw std::invalid_argument("grad_check: step must be positive");
  Graph<double> g;
  std::vector<Var> leaves;
  leaves.reserve(inputs.size());
  for (const auto& t : inputs) leaves.push_back(g.leaf(t, true));
  const Var out = fn(g, leaves);
  if (g.value(out).size() != 1) {
    throw std::invalid_argument(fmt::format("grad_check: computation must be scalar-valued, got shape {}",
                                            shape_string(g.value(out).shape())));
  }
  g.backward(out);

  GradCheckResult result;
  std::vector<Tensor<double>> probe = inputs;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Tensor<double>& analytic = g.grad(leaves[i]);
    for (std::size_t e = 0; e < inputs[i].size(); ++e) {
      const double x = inputs[i][e];
      probe[i][e] = x + h;
      const double up = evaluate(fn, probe);
      probe[i][e] = x - h;
      const double down = evaluate(fn, probe);
      probe[i][e] = x;
      const double numeric = (up - down) / (2 * h);
      const double a = analytic[e];
      const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
      const double err = std::abs(a - numeric) / denom;
      if (err > result.max_relative_error) {
        result = {err, i, e, a, numeric};
      }
    }
  }
  return result;
}

}  // namespace splicepaint
