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

#include "splicepaint/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace splicepaint {
namespace {

struct Pixel {
  int y;
  int x;
};

// Calls `visit` once per scanline with its pixels in traversal order.
template <typename Visit>
void for_each_scanline(int h, int w, Direction d, Visit&& visit) {
  std::vector<Pixel> line;
  switch (d) {
    case Direction::kHorizontal:
      for (int y = 0; y < h; ++y) {
        line.clear();
        for (int x = 0; x < w; ++x) line.push_back({y, x});
        visit(line);
      }
      break;
    case Direction::kVertical:
      for (int x = 0; x < w; ++x) {
        line.clear();
        for (int y = 0; y < h; ++y) line.push_back({y, x});
        visit(line);
      }
      break;
    case Direction::kDiagonalDown:
      for (int d0 = -(h - 1); d0 <= w - 1; ++d0) {
        line.clear();
        for (int y = std::max(0, -d0), x = y + d0; y < h && x < w; ++y, ++x) line.push_back({y, x});
        visit(line);
      }
      break;
    case Direction::kDiagonalUp:
      for (int s = 0; s <= h + w - 2; ++s) {
        line.clear();
        for (int y = std::min(s, h - 1), x = s - y; y >= 0 && x < w; --y, ++x) line.push_back({y, x});
        visit(line);
      }
      break;
  }
}

Image box_downscale(const Image& image, int s) {
  const int h = image.height() / s, w = image.width() / s;
  Image out(h, w);
  const double inv = 1.0 / (s * s);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) {
        double acc = 0;
        for (int dy = 0; dy < s; ++dy)
          for (int dx = 0; dx < s; ++dx) acc += image.at(y * s + dy, x * s + dx, c);
        out.at(y, x, c) = static_cast<float>(acc * inv);
      }
  return out;
}

Mask any_downscale(const Mask& mask, int s) {
  Mask out(mask.height() / s, mask.width() / s);
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x) {
      bool hit = false;
      for (int dy = 0; dy < s && !hit; ++dy)
        for (int dx = 0; dx < s && !hit; ++dx) hit = mask.damaged(y * s + dy, x * s + dx);
      out.at(y, x) = hit ? 1 : 0;
    }
  return out;
}

struct Tap {
  int i0, i1;
  double frac;
};

// Bilinear source taps for upscaling by s with pixel-centre alignment.
Tap upscale_tap(int dst, int s, int src_size) {
  double pos = (dst + 0.5) / s - 0.5;
  pos = std::clamp(pos, 0.0, static_cast<double>(src_size - 1));
  const int i0 = static_cast<int>(std::floor(pos));
  return {i0, std::min(i0 + 1, src_size - 1), pos - i0};
}

// Exact at both ends and for a == b.
double lerp(double a, double b, double t) { return a + (b - a) * t; }

}  // namespace

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::kHorizontal: return "horizontal";
    case Direction::kVertical: return "vertical";
    case Direction::kDiagonalDown: return "diagonal-down";
    case Direction::kDiagonalUp: return "diagonal-up";
  }
  return "unknown";
}

void BaselineConfig::validate() const {
  if (scales.empty()) throw std::invalid_argument("baseline: at least one scale is required");
  for (int s : scales) {
    if (s < 1 || (s & (s - 1)) != 0)
      throw std::invalid_argument(fmt::format("baseline: scale {} is not a positive power of two", s));
  }
}

DirectionalFill directional_fill(const Image& image, const Mask& mask, Direction direction) {
  if (image.height() != mask.height() || image.width() != mask.width()) {
    throw std::invalid_argument(fmt::format("directional_fill: image {}x{} vs mask {}x{}", image.height(),
                                            image.width(), mask.height(), mask.width()));
  }
  DirectionalFill out{image, std::vector<std::uint8_t>(mask.pixel_count(), 0), 0};
  const int w = image.width();
  for_each_scanline(image.height(), w, direction, [&](const std::vector<Pixel>& line) {
    const int n = static_cast<int>(line.size());
    int i = 0;
    while (i < n) {
      if (!mask.damaged(line[i].y, line[i].x)) {
        ++i;
        continue;
      }
      int j = i;
      while (j < n && mask.damaged(line[j].y, line[j].x)) ++j;
      const int left = i - 1, right = j;  // bounding valid positions, may be out of range
      const bool has_left = left >= 0, has_right = right < n;
      if (!has_left && !has_right) {
        out.unfilled += static_cast<std::size_t>(j - i);
      } else {
        for (int k = i; k < j; ++k) {
          const Pixel p = line[k];
          for (int c = 0; c < 3; ++c) {
            float v;
            if (has_left && has_right) {
              const double t = static_cast<double>(k - left) / (right - left);
              const double a = image.at(line[left].y, line[left].x, c);
              const double b = image.at(line[right].y, line[right].x, c);
              v = static_cast<float>(a + (b - a) * t);
            } else {
              const Pixel src = has_left ? line[left] : line[right];
              v = image.at(src.y, src.x, c);
            }
            out.image.at(p.y, p.x, c) = v;
          }
          out.filled[static_cast<std::size_t>(p.y) * w + p.x] = 1;
        }
      }
      i = j;
    }
  });
  return out;
}

Image multiscale_inpaint(const Image& image, const Mask& mask, const BaselineConfig& config) {
  config.validate();
  if (image.height() != mask.height() || image.width() != mask.width()) {
    throw std::invalid_argument(fmt::format("multiscale_inpaint: image {}x{} vs mask {}x{}", image.height(),
                                            image.width(), mask.height(), mask.width()));
  }
  const int largest = *std::max_element(config.scales.begin(), config.scales.end());
  if (image.height() % largest != 0 || image.width() % largest != 0) {
    throw std::invalid_argument(fmt::format("multiscale_inpaint: {}x{} is not divisible by scale {}",
                                            image.height(), image.width(), largest));
  }
  const int h = image.height(), w = image.width();
  const std::size_t npx = mask.pixel_count();
  std::vector<double> sum(npx * 3, 0.0);
  std::vector<int> count(npx, 0);

  for (int s : config.scales) {
    const Image small = s == 1 ? image : box_downscale(image, s);
    const Mask small_mask = s == 1 ? mask : any_downscale(mask, s);
    const int sw = small.width();
    for (Direction d : kDirections) {
      const DirectionalFill fill = directional_fill(small, small_mask, d);
      auto known = [&](int y, int x) {
        const std::size_t i = static_cast<std::size_t>(y) * sw + x;
        return !small_mask.damaged(y, x) || fill.filled[i] != 0;
      };
      for (int y = 0; y < h; ++y) {
        const Tap ty = s == 1 ? Tap{y, y, 0.0} : upscale_tap(y, s, small.height());
        for (int x = 0; x < w; ++x) {
          if (!mask.damaged(y, x)) continue;
          const Tap tx = s == 1 ? Tap{x, x, 0.0} : upscale_tap(x, s, sw);
          // Every tap with non-zero weight must hold a real value.
          const bool ok = known(ty.i0, tx.i0) && (tx.frac == 0 || known(ty.i0, tx.i1)) &&
                          (ty.frac == 0 || known(ty.i1, tx.i0)) &&
                          (tx.frac == 0 || ty.frac == 0 || known(ty.i1, tx.i1));
          if (!ok) continue;
          const std::size_t p = static_cast<std::size_t>(y) * w + x;
          for (int c = 0; c < 3; ++c) {
            const double top = lerp(fill.image.at(ty.i0, tx.i0, c), fill.image.at(ty.i0, tx.i1, c), tx.frac);
            const double bot = lerp(fill.image.at(ty.i1, tx.i0, c), fill.image.at(ty.i1, tx.i1, c), tx.frac);
            sum[p * 3 + c] += lerp(top, bot, ty.frac);
          }
          ++count[p];
        }
      }
    }
  }

  Image out = image;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!mask.damaged(y, x)) continue;
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      if (count[p] > 0) {
        for (int c = 0; c < 3; ++c) out.at(y, x, c) = static_cast<float>(sum[p * 3 + c] / count[p]);
        continue;
      }
      double acc[3] = {0, 0, 0};
      int n = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int yy = y + dy, xx = x + dx;
          if ((dy == 0 && dx == 0) || yy < 0 || xx < 0 || yy >= h || xx >= w || mask.damaged(yy, xx)) continue;
          for (int c = 0; c < 3; ++c) acc[c] += image.at(yy, xx, c);
          ++n;
        }
      if (n == 0) throw std::runtime_error(fmt::format("multiscale_inpaint: unfillable region at ({}, {})", y, x));
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = static_cast<float>(acc[c] / n);
    }
  return out;
}

}  // namespace splicepaint
