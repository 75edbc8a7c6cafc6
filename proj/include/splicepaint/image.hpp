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
#include <vector>

#include "splicepaint/tensor.hpp"

namespace splicepaint {

// H x W x 3 picture, channel-interleaved, values nominally in [0, 1].
class Image {
 public:
  static constexpr int kChannels = 3;

  Image() = default;
  Image(int height, int width, float fill = 0.0f);
  Image(int height, int width, std::vector<float> data);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(height_) * width_; }

  float& at(int y, int x, int c) { return data_[index(y, x, c)]; }
  float at(int y, int x, int c) const { return data_[index(y, x, c)]; }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  bool same_size(const Image& o) const { return height_ == o.height_ && width_ == o.width_; }
  bool in_unit_range() const;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int y, int x, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels + c;
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<float> data_;
};

// Packs images of equal size into an N x 3 x H x W tensor.
Tensor<float> to_planar(std::span<const Image> images);
// Extracts image `n` from an N x 3 x H x W tensor.
Image from_planar(const Tensor<float>& batch, std::size_t n);

// Bilinear resampling with pixel-centre alignment and edge clamping.
Image resize(const Image& image, int height, int width);

enum class Flip { kHorizontal, kVertical };
Image flip(const Image& image, Flip axis);
// Clockwise rotation by a multiple of 90 degrees.
Image rotate(const Image& image, int degrees);

struct AugmentConfig {
  double flip_probability = 0.5;
  double rotate_probability = 0.5;

  void validate() const;
};

// With flip_probability, one flip chosen uniformly from {horizontal,
// vertical}; then independently with rotate_probability, a rotation chosen
// uniformly from {90, 180, 270}. Fully determined by `sample_seed`.
Image augment(const Image& image, const AugmentConfig& config, std::uint64_t sample_seed);

}  // namespace splicepaint
