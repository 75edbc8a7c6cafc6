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

#include "splicepaint/bench.hpp"

#include <optional>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "splicepaint/composite.hpp"
#include "splicepaint/rng.hpp"

namespace splicepaint {

Mask bench_mask(int height, int width, const MaskRegime& regime, std::uint64_t seed, std::size_t image_index) {
  return generate_mask(height, width, regime,
                       derive_seed({seed, 0x62656e6368, static_cast<std::uint64_t>(regime.kind), image_index}));
}

BenchResult run_benchmark(const Network& net, std::span<const BenchImage> images, const BenchOptions& options) {
  if (images.empty()) throw std::invalid_argument("benchmark: no images");
  if (options.regimes.empty()) throw std::invalid_argument("benchmark: no regimes");
  std::set<std::string> ids;
  for (const auto& img : images)
    if (!ids.insert(img.id).second) throw std::invalid_argument(fmt::format("benchmark: duplicate image id '{}'", img.id));

  const std::string ours(kNetworkMethod), baseline(kBaselineMethod);
  BenchResult result;
  for (const MaskRegime& regime : options.regimes) {
    const std::string rname(regime.name());
    std::vector<EvalRow> interp_rows, net_rows;
    for (std::size_t i = 0; i < images.size(); ++i) {
      const BenchImage& img = images[i];
      EvalRow irow, nrow;
      irow.image_id = nrow.image_id = img.id;
      irow.method = baseline;
      nrow.method = ours;
      irow.regime = nrow.regime = rname;
      std::optional<Mask> mask;
      std::optional<Image> corrupted;
      try {
        mask = bench_mask(img.clean.height(), img.clean.width(), regime, options.seed, i);
        corrupted = apply_mask(img.clean, *mask, options.fill);
      } catch (const std::exception& e) {
        irow.error = nrow.error = fmt::format("masking failed: {}", e.what());
      }
      if (mask) {
        try {
          const MetricPair m = compare(multiscale_inpaint(*corrupted, *mask, options.baseline), img.clean);
          irow.psnr_db = m.psnr_db;
          irow.ssim = m.ssim;
        } catch (const std::exception& e) {
          irow.error = e.what();
        }
        try {
          const Image restored = composite(*corrupted, predict(net, *corrupted, *mask), *mask);
          const MetricPair m = compare(restored, img.clean);
          nrow.psnr_db = m.psnr_db;
          nrow.ssim = m.ssim;
        } catch (const std::exception& e) {
          nrow.error = e.what();
        }
      }
      result.failures += !irow.error.empty();
      result.failures += !nrow.error.empty();
      interp_rows.push_back(std::move(irow));
      net_rows.push_back(std::move(nrow));
    }
    for (auto* rows : {&interp_rows, &net_rows})
      result.report.rows.insert(result.report.rows.end(), rows->begin(), rows->end());
  }
  for (const MaskRegime& regime : options.regimes)
    for (const std::string& method : {baseline, ours})
      result.report.aggregates.push_back(
          aggregate(result.report.rows, method, std::string(regime.name()), options.dataset));
  return result;
}

}  // namespace splicepaint
