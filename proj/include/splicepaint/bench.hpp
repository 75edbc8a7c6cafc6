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
#include <utility>
#include <vector>

#include "splicepaint/image.hpp"
#include "splicepaint/interp.hpp"
#include "splicepaint/mask.hpp"
#include "splicepaint/metrics.hpp"
#include "splicepaint/network.hpp"

namespace splicepaint {

inline constexpr std::string_view kNetworkMethod = "ours";

struct BenchImage {
  std::string id;
  Image clean;
};

struct BenchOptions {
  std::vector<MaskRegime> regimes = {MaskRegime::narrow_center(), MaskRegime::variable(), MaskRegime::thick()};
  BaselineConfig baseline;
  float fill = 1.0f;
  std::uint64_t seed = 0;
  std::string dataset;
};

struct BenchResult {
  EvalReport report;
  std::size_t failures = 0;
};

// The mask shared by both methods for one (image, regime) cell.
Mask bench_mask(int height, int width, const MaskRegime& regime, std::uint64_t seed, std::size_t image_index);

// For every regime, masks each image once and restores it with the
// interpolation baseline and with the network plus compositing. Failures are
// recorded per row and do not stop the run. Rows come out grouped by regime,
// then method, then image; one aggregate per (method, regime).
BenchResult run_benchmark(const Network& net, std::span<const BenchImage> images, const BenchOptions& options);

}  // namespace splicepaint
