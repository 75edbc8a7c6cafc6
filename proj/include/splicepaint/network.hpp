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
#include <span>
#include <string>
#include <vector>

#include "splicepaint/autodiff.hpp"
#include "splicepaint/image.hpp"
#include "splicepaint/mask.hpp"
#include "splicepaint/tensor.hpp"

namespace splicepaint {

// Encoder-decoder hyperparameters. Level i of the encoder has
// base_channels * 2^i channels; the bottleneck has base_channels * 2^depth.
struct NetworkConfig {
  int depth = 2;
  int base_channels = 8;
  int input_height = 32;
  int input_width = 32;
  // 3 for the corrupted image alone, 4 to append the mask as a channel.
  int input_channels = 3;
  int kernel_size = 3;
  std::uint64_t seed = 0;

  // 32x32, depth 2, base 8.
  static NetworkConfig desk_scale();
  // 224x224, depth 5, base 32.
  static NetworkConfig paper_scale();

  bool mask_channel() const { return input_channels == 4; }
  void validate() const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

struct NamedTensor {
  std::string name;
  Tensor<float> value;
};

class Network {
 public:
  Network(NetworkConfig config, std::vector<NamedTensor> params);

  const NetworkConfig& config() const { return config_; }
  std::vector<NamedTensor>& params() { return params_; }
  const std::vector<NamedTensor>& params() const { return params_; }
  std::size_t parameter_count() const;

 private:
  NetworkConfig config_;
  std::vector<NamedTensor> params_;
};

struct ParamSpec {
  std::string name;
  Shape shape;
  std::size_t fan_in;  // 0 for biases
};

// Parameter names and shapes in canonical order:
// enc{i}.conv{0,1}, bottleneck.conv{0,1}, dec{depth-1..0}.conv{0,1}, head;
// each conv contributes a .weight then a .bias.
std::vector<ParamSpec> parameter_layout(const NetworkConfig& config);

// He-uniform weights (bound sqrt(6 / fan_in)), zero biases, drawn in layout
// order from config.seed.
Network build_network(const NetworkConfig& config);

// Records the forward pass on `graph`. `params` are leaves in layout order;
// `input` is N x input_channels x H x W. Returns N x 3 x H x W in (0, 1).
template <typename T>
Var record_forward(Graph<T>& graph, const NetworkConfig& config, std::span<const Var> params, Var input);

extern template Var record_forward<float>(Graph<float>&, const NetworkConfig&, std::span<const Var>, Var);
extern template Var record_forward<double>(Graph<double>&, const NetworkConfig&, std::span<const Var>, Var);

Tensor<float> forward(const Network& net, const Tensor<float>& batch);

// Builds the N x C x H x W network input from corrupted images and, when the
// config asks for it, their masks.
Tensor<float> network_input(const NetworkConfig& config, std::span<const Image> corrupted,
                            std::span<const Mask> masks);

// Raw prediction for one corrupted image.
Image predict(const Network& net, const Image& corrupted, const Mask& mask);

}  // namespace splicepaint
