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
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "splicepaint/image.hpp"

namespace splicepaint {

// H x W binary map, 1 = damaged pixel, 0 = valid pixel.
class Mask {
 public:
  Mask() = default;
  // All-valid mask. Not checked for degeneracy; see validate().
  Mask(int height, int width);
  Mask(int height, int width, std::vector<std::uint8_t> bits);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t pixel_count() const { return bits_.size(); }
  std::size_t damaged_count() const;

  std::uint8_t& at(int y, int x) { return bits_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t at(int y, int x) const { return bits_[static_cast<std::size_t>(y) * width_ + x]; }
  bool damaged(int y, int x) const { return at(y, x) != 0; }

  std::span<const std::uint8_t> bits() const { return bits_; }

  // Throws unless the mask has at least one damaged and one valid pixel.
  void validate() const;

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> bits_;
};

enum class RegimeKind { kNarrowCenter, kVariable, kThick };

// A family of random scratch masks: `min_lines`..`max_lines` polylines of
// `min_vertices`..`max_vertices` vertices each, every polyline drawn with one
// width from `min_width`..`max_width` (inclusive, pixels).
struct MaskRegime {
  RegimeKind kind = RegimeKind::kVariable;
  int min_lines = 2;
  int max_lines = 8;
  int min_vertices = 2;
  int max_vertices = 5;
  int min_width = 1;
  int max_width = 8;

  // Fixed-width strokes confined to the central half of the frame.
  static MaskRegime narrow_center(int width = 2);
  static MaskRegime variable();
  static MaskRegime thick();

  std::string_view name() const;
  void validate() const;
};

// Accepts "narrow", "variable" and "thick".
std::optional<MaskRegime> regime_from_name(std::string_view name);

struct StrokePoint {
  double x;
  double y;
};

struct Stroke {
  std::vector<StrokePoint> vertices;
  int width = 1;
};

// The random stroke geometry behind generate_mask. Vertices sit on pixel
// centres for odd widths and on pixel corners for even widths, so an
// axis-aligned segment covers exactly `width` pixels across.
std::vector<Stroke> sample_strokes(int height, int width, const MaskRegime& regime, std::uint64_t seed);

// Marks every pixel whose centre lies within (width - 1) / 2 of a stroke
// segment: a capsule per segment, which gives round caps and joins.
void rasterize_stroke(Mask& mask, const Stroke& stroke);

// Deterministic in (height, width, regime, seed). Draws that come out
// all-valid or all-damaged are redrawn from a derived seed.
Mask generate_mask(int height, int width, const MaskRegime& regime, std::uint64_t seed);

// Damaged pixels become `fill` in every channel; valid pixels are copied.
Image apply_mask(const Image& image, const Mask& mask, float fill);

double mask_coverage(const Mask& mask);

// 8-bit grayscale PNG, 255 = damaged. On load any value >= 128 is damaged.
Mask load_mask(const std::filesystem::path& path);
void save_mask(const Mask& mask, const std::filesystem::path& path);

}  // namespace splicepaint
