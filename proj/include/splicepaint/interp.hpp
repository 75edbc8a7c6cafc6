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

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "splicepaint/image.hpp"
#include "splicepaint/mask.hpp"

namespace splicepaint {

// Report name of the interpolation baseline. It is a simplified
// four-direction, multi-scale linear interpolator, not a reproduction of any
// published spline method.
inline constexpr std::string_view kBaselineMethod = "interp-simplified";

enum class Direction {
  kHorizontal,
  kVertical,
  kDiagonalDown,  // x - y constant, running top-left to bottom-right
  kDiagonalUp,    // x + y constant, running bottom-left to top-right
};

inline constexpr std::array<Direction, 4> kDirections = {Direction::kHorizontal, Direction::kVertical,
                                                         Direction::kDiagonalDown, Direction::kDiagonalUp};

std::string_view direction_name(Direction d);

struct BaselineConfig {
  std::vector<int> scales = {1, 2, 4};

  void validate() const;
};

struct DirectionalFill {
  Image image;
  // 1 where a damaged pixel received a value along its scanline.
  std::vector<std::uint8_t> filled;
  // Damaged pixels on scanlines with no valid pixel at all.
  std::size_t unfilled = 0;
};

// Along every scanline in `direction`, each maximal damaged run bounded by
// valid pixels on both ends is linearly interpolated between them; a run
// touching the border copies its one valid neighbour. Runs on fully damaged
// scanlines keep their input values and are reported as unfilled.
DirectionalFill directional_fill(const Image& image, const Mask& mask, Direction direction);

// For each scale s: box-downscale image and mask (a block is damaged if any of
// its pixels is), fill in all four directions, bilinearly upscale each result.
// Every damaged pixel becomes the unweighted mean of the candidates that
// reached it; valid pixels are copied unchanged.
Image multiscale_inpaint(const Image& image, const Mask& mask, const BaselineConfig& config = {});

}  // namespace splicepaint
