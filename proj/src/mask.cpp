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

#include "splicepaint/mask.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "splicepaint/image_io.hpp"
#include "splicepaint/rng.hpp"

namespace splicepaint {

Mask::Mask(int height, int width) : height_(height), width_(width) {
  if (height < 0 || width < 0) throw std::invalid_argument("mask dimensions must be non-negative");
  bits_.assign(static_cast<std::size_t>(height) * width, 0);
}

Mask::Mask(int height, int width, std::vector<std::uint8_t> bits)
    : height_(height), width_(width), bits_(std::move(bits)) {
  if (height < 0 || width < 0) throw std::invalid_argument("mask dimensions must be non-negative");
  if (bits_.size() != static_cast<std::size_t>(height) * width) {
    throw std::invalid_argument(fmt::format("mask data length {} does not match {}x{}", bits_.size(), height, width));
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t Mask::damaged_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void Mask::validate() const {
  const std::size_t d = damaged_count();
  if (d == 0) throw std::invalid_argument("degenerate mask: no damaged pixels");
  if (d == bits_.size()) throw std::invalid_argument("degenerate mask: no valid pixels");
}

MaskRegime MaskRegime::narrow_center(int width) {
  MaskRegime r;
  r.kind = RegimeKind::kNarrowCenter;
  r.min_width = r.max_width = width;
  return r;
}

MaskRegime MaskRegime::variable() { return MaskRegime{}; }

MaskRegime MaskRegime::thick() {
  MaskRegime r;
  r.kind = RegimeKind::kThick;
  r.min_width = 8;
  r.max_width = 24;
  return r;
}

std::string_view MaskRegime::name() const {
  switch (kind) {
    case RegimeKind::kNarrowCenter: return "narrow";
    case RegimeKind::kVariable: return "variable";
    case RegimeKind::kThick: return "thick";
  }
  return "unknown";
}

void MaskRegime::validate() const {
  if (min_lines < 1 || max_lines < min_lines)
    throw std::invalid_argument(fmt::format("regime {}: bad line count range [{}, {}]", name(), min_lines, max_lines));
  if (min_vertices < 2 || max_vertices < min_vertices)
    throw std::invalid_argument(
        fmt::format("regime {}: bad vertex count range [{}, {}]", name(), min_vertices, max_vertices));
  if (min_width < 1 || max_width < min_width)
    throw std::invalid_argument(fmt::format("regime {}: bad width range [{}, {}]", name(), min_width, max_width));
  if (kind == RegimeKind::kNarrowCenter && min_width != max_width)
    throw std::invalid_argument("regime narrow: all strokes share one fixed width");
}

std::optional<MaskRegime> regime_from_name(std::string_view name) {
  if (name == "narrow") return MaskRegime::narrow_center();
  if (name == "variable") return MaskRegime::variable();
  if (name == "thick") return MaskRegime::thick();
  return std::nullopt;
}

std::vector<Stroke> sample_strokes(int height, int width, const MaskRegime& regime, std::uint64_t seed) {
  regime.validate();
  if (height < 16 || width < 16) {
    throw std::invalid_argument(fmt::format("mask size {}x{} is below the 16x16 minimum", height, width));
  }
  if (std::min(height, width) < 2 * regime.max_width) {
    throw std::invalid_argument(fmt::format("{}x{} frame is too small for regime '{}' with stroke width up to {}",
                                            height, width, regime.name(), regime.max_width));
  }
  int x_lo = 0, x_hi = width - 1, y_lo = 0, y_hi = height - 1;
  if (regime.kind == RegimeKind::kNarrowCenter) {
    x_lo = width / 4;
    x_hi = (3 * width) / 4 - 1;
    y_lo = height / 4;
    y_hi = (3 * height) / 4 - 1;
  }
  Rng rng(seed);
  const auto lines = rng.uniform_int(regime.min_lines, regime.max_lines);
  std::vector<Stroke> strokes;
  strokes.reserve(static_cast<std::size_t>(lines));
  for (std::int64_t i = 0; i < lines; ++i) {
    Stroke s;
    s.width = static_cast<int>(rng.uniform_int(regime.min_width, regime.max_width));
    const double offset = s.width % 2 == 0 ? 0.5 : 0.0;
    const auto n = rng.uniform_int(regime.min_vertices, regime.max_vertices);
    for (std::int64_t v = 0; v < n; ++v) {
      const double x = static_cast<double>(rng.uniform_int(x_lo, x_hi)) + offset;
      const double y = static_cast<double>(rng.uniform_int(y_lo, y_hi)) + offset;
      s.vertices.push_back({x, y});
    }
    strokes.push_back(std::move(s));
  }
  return strokes;
}

namespace {

double segment_distance_sq(double px, double py, const StrokePoint& a, const StrokePoint& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - a.x) * dx + (py - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = a.x + t * dx - px, ey = a.y + t * dy - py;
  return ex * ex + ey * ey;
}

}  // namespace

void rasterize_stroke(Mask& mask, const Stroke& stroke) {
  if (stroke.vertices.empty()) return;
  const double radius = (stroke.width - 1) / 2.0;
  const double limit = radius * radius + 1e-9;
  const std::size_t n = stroke.vertices.size();
  // A single vertex is drawn as a dot.
  for (std::size_t i = 0; i + 1 < std::max<std::size_t>(n, 2); ++i) {
    const StrokePoint& a = stroke.vertices[i];
    const StrokePoint& b = stroke.vertices[std::min(i + 1, n - 1)];
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - radius)));
    const int x1 = std::min(mask.width() - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - radius)));
    const int y1 = std::min(mask.height() - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + radius)));
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        if (segment_distance_sq(x, y, a, b) <= limit) mask.at(y, x) = 1;
  }
}

Mask generate_mask(int height, int width, const MaskRegime& regime, std::uint64_t seed) {
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : derive_seed({seed, static_cast<std::uint64_t>(attempt)});
    Mask m(height, width);
    for (const Stroke& stroke : sample_strokes(height, width, regime, s)) rasterize_stroke(m, stroke);
    const std::size_t d = m.damaged_count();
    if (d > 0 && d < m.pixel_count()) return m;
  }
  throw std::runtime_error(
      fmt::format("regime '{}' produced only degenerate masks at {}x{}", regime.name(), height, width));
}

Image apply_mask(const Image& image, const Mask& mask, float fill) {
  if (image.height() != mask.height() || image.width() != mask.width()) {
    throw std::invalid_argument(fmt::format("apply_mask: image {}x{} vs mask {}x{}", image.height(),
                                            image.width(), mask.height(), mask.width()));
  }
  if (!(fill >= 0.0f && fill <= 1.0f)) throw std::invalid_argument(fmt::format("apply_mask: fill {} not in [0,1]", fill));
  Image out = image;
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      if (mask.damaged(y, x))
        for (int c = 0; c < 3; ++c) out.at(y, x, c) = fill;
  return out;
}

double mask_coverage(const Mask& mask) {
  if (mask.pixel_count() == 0) return 0.0;
  return static_cast<double>(mask.damaged_count()) / static_cast<double>(mask.pixel_count());
}

Mask load_mask(const std::filesystem::path& path) {
  Gray8 g = load_gray8(path);
  std::vector<std::uint8_t> bits(g.pixels.size());
  std::transform(g.pixels.begin(), g.pixels.end(), bits.begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v >= 128 ? 1 : 0); });
  return Mask(g.height, g.width, std::move(bits));
}

void save_mask(const Mask& mask, const std::filesystem::path& path) {
  Gray8 g{mask.height(), mask.width(), std::vector<std::uint8_t>(mask.pixel_count())};
  std::transform(mask.bits().begin(), mask.bits().end(), g.pixels.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint8_t>(b ? 255 : 0); });
  save_gray8(g, path);
}

}  // namespace splicepaint
