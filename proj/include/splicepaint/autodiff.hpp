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

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "splicepaint/tensor.hpp"

namespace splicepaint {

// Handle to a node recorded on a Graph.
struct Var {
  std::size_t id = static_cast<std::size_t>(-1);
};

// Tape-based reverse-mode differentiation over Tensor<T>.
//
// Every operation evaluates eagerly and appends a node. Nodes are appended in
// evaluation order, so walking the tape backwards visits each node after all
// of its consumers. Gradients are zero-initialised at node creation and only
// ever accumulated into.
//
// A Graph is not thread-safe; independent graphs share no state.
template <typename T>
class Graph {
 public:
  Var leaf(Tensor<T> value, bool requires_grad = true);

  // input N x Cin x H x W, kernel Cout x Cin x k x k, bias Cout.
  Var conv2d(Var input, Var kernel, Var bias, int stride = 1, int padding = 0);
  Var maxpool2d(Var input, int window = 2, int stride = 2);
  Var upsample_nearest(Var input, int factor = 2);
  // Channels of `a` first, then `b`.
  Var concat_channels(Var a, Var b);

  Var relu(Var x);
  // Output is clamped into the open interval (0, 1).
  Var sigmoid(Var x);
  Var add(Var a, Var b);
  Var sum(Var x);

  // Mean of squared differences over all elements; scalar.
  Var mse(Var pred, Var target);
  // sum(w * (pred - target)^2) / sum(w). `weight` has the shape of `pred`.
  Var weighted_mse(Var pred, Var target, const Tensor<T>& weight);

  // Returned references are invalidated when further nodes are recorded.
  const Tensor<T>& value(Var v) const { return node(v).value; }
  const Tensor<T>& grad(Var v) const { return node(v).grad; }
  std::string_view op(Var v) const { return node(v).op; }
  bool requires_grad(Var v) const { return node(v).requires_grad; }
  std::size_t size() const { return nodes_.size(); }

  // Seeds d(root)/d(root) = 1 and propagates to every node that requires a
  // gradient. `root` must hold exactly one element.
  void backward(Var root);
  void zero_grad();

 private:
  struct Node {
    Tensor<T> value;
    Tensor<T> grad;
    std::string_view op;
    std::vector<std::size_t> parents;
    bool requires_grad = false;
    std::function<void(Graph&, std::size_t self)> backward;
  };

  const Node& node(Var v) const;
  Node& node(Var v);
  Var push(Tensor<T> value, std::string_view op, std::vector<std::size_t> parents,
           std::function<void(Graph&, std::size_t)> backward);

  std::vector<Node> nodes_;
};

extern template class Graph<float>;
extern template class Graph<double>;

}  // namespace splicepaint
