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

#include "splicepaint/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "splicepaint/rng.hpp"

namespace splicepaint {

Image::Image(int height, int width, float fill) : height_(height), width_(width) {
  if (height < 0 || width < 0) throw std::invalid_argument("image dimensions must be non-negative");
  data_.assign(pixel_count() * kChannels, fill);
}

Image::Image(int height, int width, std::vector<float> data)
    : height_(height), width_(width), data_(std::move(data)) {
  if (height < 0 || width < 0) throw std::invalid_argument("image dimensions must be non-negative");
  if (data_.size() != pixel_count() * kChannels) {
    throw std::invalid_argument(
        fmt::format("image data length {} does not match {}x{}x3", data_.size(), height, width));
  }
}

bool Image::in_unit_range() const {
  return std::all_of(data_.begin(), data_.end(), [](float v) { return v >= 0.0f && v <= 1.0f; });
}

Tensor<float> to_planar(std::span<const Image> images) {
  if (images.empty()) throw std::invalid_argument("to_planar: no images");
  const int h = images[0].height(), w = images[0].width();
  Tensor<float> out(Shape{images.size(), 3, static_cast<std::size_t>(h), static_cast<std::size_t>(w)});
  for (std::size_t n = 0; n < images.size(); ++n) {
    if (images[n].height() != h || images[n].width() != w) {
      throw std::invalid_argument(fmt::format("to_planar: image {} is {}x{}, expected {}x{}", n,
                                              images[n].height(), images[n].width(), h, w));
    }
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.at(n, c, y, x) = images[n].at(y, x, c);
  }
  return out;
}

Image from_planar(const Tensor<float>& batch, std::size_t n) {
  if (batch.rank() != 4 || batch.dim(1) != 3 || n >= batch.dim(0)) {
    throw std::invalid_argument(
        fmt::format("from_planar: cannot take image {} from tensor {}", n, shape_string(batch.shape())));
  }
  const int h = static_cast<int>(batch.dim(2)), w = static_cast<int>(batch.dim(3));
  Image out(h, w);
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out.at(y, x, c) = batch.at(n, c, y, x);
  return out;
}

Image resize(const Image& image, int height, int width) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument(fmt::format("resize: target {}x{} must be positive", height, width));
  }
  if (image.height() < 1 || image.width() < 1) throw std::invalid_argument("resize: empty source image");
  if (height == image.height() && width == image.width()) return image;

  const double sy = static_cast<double>(image.height()) / height;
  const double sx = static_cast<double>(image.width()) / width;
  auto sample = [](double pos, int size, int& i0, int& i1, double& frac) {
    pos = std::clamp(pos, 0.0, static_cast<double>(size - 1));
    i0 = static_cast<int>(std::floor(pos));
    i1 = std::min(i0 + 1, size - 1);
    frac = pos - i0;
  };
  Image out(height, width);
  for (int y = 0; y < height; ++y) {
    int y0, y1;
    double fy;
    sample((y + 0.5) * sy - 0.5, image.height(), y0, y1, fy);
    for (int x = 0; x < width; ++x) {
      int x0, x1;
      double fx;
      sample((x + 0.5) * sx - 0.5, image.width(), x0, x1, fx);
      for (int c = 0; c < 3; ++c) {
        const double top = image.at(y0, x0, c) * (1 - fx) + image.at(y0, x1, c) * fx;
        const double bot = image.at(y1, x0, c) * (1 - fx) + image.at(y1, x1, c) * fx;
        out.at(y, x, c) = static_cast<float>(top * (1 - fy) + bot * fy);
      }
    }
  }
  return out;
}

Image flip(const Image& image, Flip axis) {
  Image out(image.height(), image.width());
  const int h = image.height(), w = image.width();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int sy = axis == Flip::kVertical ? h - 1 - y : y;
      const int sx = axis == Flip::kHorizontal ? w - 1 - x : x;
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = image.at(sy, sx, c);
    }
  return out;
}

Image rotate(const Image& image, int degrees) {
  const int turns = ((degrees / 90) % 4 + 4) % 4;
  if (degrees % 90 != 0) throw std::invalid_argument(fmt::format("rotate: {} is not a right angle", degrees));
  if (turns == 0) return image;
  const int h = image.height(), w = image.width();
  const bool swap = turns % 2 == 1;
  Image out(swap ? w : h, swap ? h : w);
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x) {
      int sy = y, sx = x;
      switch (turns) {
        case 1: sy = h - 1 - x; sx = y; break;
        case 2: sy = h - 1 - y; sx = w - 1 - x; break;
        case 3: sy = x; sx = w - 1 - y; break;
      }
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = image.at(sy, sx, c);
    }
  return out;
}

void AugmentConfig::validate() const {
  if (!(flip_probability >= 0 && flip_probability <= 1))
    throw std::invalid_argument(fmt::format("augment: flip_probability {} not in [0,1]", flip_probability));
  if (!(rotate_probability >= 0 && rotate_probability <= 1))
    throw std::invalid_argument(fmt::format("augment: rotate_probability {} not in [0,1]", rotate_probability));
}

Image augment(const Image& image, const AugmentConfig& config, std::uint64_t sample_seed) {
  Rng rng(sample_seed);
  // All four draws happen unconditionally so each decision depends only on
  // the seed, not on the outcome of earlier ones.
  const bool do_flip = rng.bernoulli(config.flip_probability);
  const Flip axis = rng.uniform_int(0, 1) == 0 ? Flip::kHorizontal : Flip::kVertical;
  const bool do_rotate = rng.bernoulli(config.rotate_probability);
  const int degrees = 90 * static_cast<int>(rng.uniform_int(1, 3));

  Image out = do_flip ? flip(image, axis) : image;
  if (do_rotate) {
    if (degrees != 180 && out.height() != out.width()) {
      throw std::invalid_argument(fmt::format("augment: {} degree rotation needs a square image, got {}x{}",
                                              degrees, out.height(), out.width()));
    }
    out = rotate(out, degrees);
  }
  return out;
}

}  // namespace splicepaint
