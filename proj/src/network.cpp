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

#include "splicepaint/network.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "splicepaint/rng.hpp"

namespace splicepaint {

NetworkConfig NetworkConfig::desk_scale() { return NetworkConfig{}; }

NetworkConfig NetworkConfig::paper_scale() {
  NetworkConfig c;
  c.depth = 5;
  c.base_channels = 32;
  c.input_height = c.input_width = 224;
  return c;
}

void NetworkConfig::validate() const {
  if (depth < 1) throw std::invalid_argument(fmt::format("network: depth must be >= 1, got {}", depth));
  if (depth > 16) throw std::invalid_argument(fmt::format("network: depth {} is unreasonably large", depth));
  if (base_channels < 1)
    throw std::invalid_argument(fmt::format("network: base_channels must be >= 1, got {}", base_channels));
  if (input_channels != 3 && input_channels != 4)
    throw std::invalid_argument(fmt::format("network: input_channels must be 3 or 4, got {}", input_channels));
  if (kernel_size < 1 || kernel_size % 2 == 0)
    throw std::invalid_argument(fmt::format("network: kernel_size must be odd and positive, got {}", kernel_size));
  const int step = 1 << depth;
  if (input_height < 1 || input_height % step != 0)
    throw std::invalid_argument(fmt::format("network: input height {} is not divisible by 2^{} = {}",
                                            input_height, depth, step));
  if (input_width < 1 || input_width % step != 0)
    throw std::invalid_argument(fmt::format("network: input width {} is not divisible by 2^{} = {}",
                                            input_width, depth, step));
}

Network::Network(NetworkConfig config, std::vector<NamedTensor> params)
    : config_(config), params_(std::move(params)) {
  config_.validate();
  const auto layout = parameter_layout(config_);
  if (layout.size() != params_.size())
    throw std::invalid_argument(
        fmt::format("network: expected {} parameter tensors, got {}", layout.size(), params_.size()));
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i].name != params_[i].name || layout[i].shape != params_[i].value.shape()) {
      throw std::invalid_argument(fmt::format("network: parameter {} is '{}' {}, expected '{}' {}", i,
                                              params_[i].name, shape_string(params_[i].value.shape()),
                                              layout[i].name, shape_string(layout[i].shape)));
    }
  }
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

std::vector<ParamSpec> parameter_layout(const NetworkConfig& config) {
  config.validate();
  const auto k = static_cast<std::size_t>(config.kernel_size);
  std::vector<ParamSpec> out;
  auto conv = [&](const std::string& prefix, std::size_t cin, std::size_t cout, std::size_t ksz) {
    out.push_back({prefix + ".weight", Shape{cout, cin, ksz, ksz}, cin * ksz * ksz});
    out.push_back({prefix + ".bias", Shape{cout}, 0});
  };
  auto width = [&](int level) { return static_cast<std::size_t>(config.base_channels) << level; };

  std::size_t cin = static_cast<std::size_t>(config.input_channels);
  for (int i = 0; i < config.depth; ++i) {
    conv(fmt::format("enc{}.conv0", i), cin, width(i), k);
    conv(fmt::format("enc{}.conv1", i), width(i), width(i), k);
    cin = width(i);
  }
  conv("bottleneck.conv0", cin, width(config.depth), k);
  conv("bottleneck.conv1", width(config.depth), width(config.depth), k);
  for (int i = config.depth - 1; i >= 0; --i) {
    // Upsampled features from the level below, then the skip connection.
    conv(fmt::format("dec{}.conv0", i), width(i + 1) + width(i), width(i), k);
    conv(fmt::format("dec{}.conv1", i), width(i), width(i), k);
  }
  conv("head", width(0), 3, 1);
  return out;
}

Network build_network(const NetworkConfig& config) {
  const auto layout = parameter_layout(config);
  Rng rng(config.seed);
  std::vector<NamedTensor> params;
  params.reserve(layout.size());
  for (const ParamSpec& spec : layout) {
    Tensor<float> t(spec.shape);
    if (spec.fan_in > 0) {
      const double bound = std::sqrt(6.0 / static_cast<double>(spec.fan_in));
      for (float& v : t.data()) v = static_cast<float>(rng.uniform(-bound, bound));
    }
    params.push_back({spec.name, std::move(t)});
  }
  return Network(config, std::move(params));
}

template <typename T>
Var record_forward(Graph<T>& g, const NetworkConfig& config, std::span<const Var> params, Var input) {
  const std::size_t expected = 8 * static_cast<std::size_t>(config.depth) + 6;
  if (params.size() != expected)
    throw std::invalid_argument(fmt::format("record_forward: expected {} parameters, got {}", expected, params.size()));
  const Shape& in = g.value(input).shape();
  if (in.size() != 4 || in[1] != static_cast<std::size_t>(config.input_channels) ||
      in[2] != static_cast<std::size_t>(config.input_height) || in[3] != static_cast<std::size_t>(config.input_width)) {
    throw std::invalid_argument(fmt::format("network input {} does not match configured Nx{}x{}x{}",
                                            shape_string(in), config.input_channels, config.input_height,
                                            config.input_width));
  }
  const int pad = config.kernel_size / 2;
  std::size_t next = 0;
  auto conv_relu = [&](Var x) {
    const Var w = params[next++];
    const Var b = params[next++];
    return g.relu(g.conv2d(x, w, b, 1, pad));
  };

  Var x = input;
  std::vector<Var> skips;
  for (int i = 0; i < config.depth; ++i) {
    x = conv_relu(conv_relu(x));
    skips.push_back(x);
    x = g.maxpool2d(x, 2, 2);
  }
  x = conv_relu(conv_relu(x));
  for (int i = config.depth - 1; i >= 0; --i) {
    x = g.concat_channels(g.upsample_nearest(x, 2), skips[static_cast<std::size_t>(i)]);
    x = conv_relu(conv_relu(x));
  }
  const Var hw = params[next++];
  const Var hb = params[next++];
  return g.sigmoid(g.conv2d(x, hw, hb, 1, 0));
}

template Var record_forward<float>(Graph<float>&, const NetworkConfig&, std::span<const Var>, Var);
template Var record_forward<double>(Graph<double>&, const NetworkConfig&, std::span<const Var>, Var);

Tensor<float> forward(const Network& net, const Tensor<float>& batch) {
  Graph<float> g;
  std::vector<Var> leaves;
  leaves.reserve(net.params().size());
  for (const auto& p : net.params()) leaves.push_back(g.leaf(p.value, false));
  const Var in = g.leaf(batch, false);
  return g.value(record_forward(g, net.config(), leaves, in));
}

Tensor<float> network_input(const NetworkConfig& config, std::span<const Image> corrupted,
                            std::span<const Mask> masks) {
  Tensor<float> rgb = to_planar(corrupted);
  if (!config.mask_channel()) return rgb;
  if (masks.size() != corrupted.size())
    throw std::invalid_argument("network_input: one mask per image is required for the mask channel");
  const std::size_t n = rgb.dim(0), h = rgb.dim(2), w = rgb.dim(3);
  Tensor<float> out(Shape{n, 4, h, w});
  for (std::size_t i = 0; i < n; ++i) {
    if (masks[i].height() != static_cast<int>(h) || masks[i].width() != static_cast<int>(w))
      throw std::invalid_argument("network_input: mask size does not match image size");
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) out.at(i, c, y, x) = rgb.at(i, c, y, x);
    for (std::size_t y = 0; y < h; ++y)
      for (std::size_t x = 0; x < w; ++x)
        out.at(i, 3, y, x) = static_cast<float>(masks[i].at(static_cast<int>(y), static_cast<int>(x)));
  }
  return out;
}

Image predict(const Network& net, const Image& corrupted, const Mask& mask) {
  const NetworkConfig& c = net.config();
  if (corrupted.height() != c.input_height || corrupted.width() != c.input_width) {
    throw std::invalid_argument(fmt::format("predict: image is {}x{} but the network expects {}x{}",
                                            corrupted.height(), corrupted.width(), c.input_height, c.input_width));
  }
  const Tensor<float> out =
      forward(net, network_input(c, std::span<const Image>(&corrupted, 1), std::span<const Mask>(&mask, 1)));
  return from_planar(out, 0);
}

}  // namespace splicepaint
