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

#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "splicepaint/image.hpp"

namespace splicepaint {

// 10 log10(max_val^2 / MSE) over all samples; +infinity when the inputs are
// identical.
double psnr(std::span<const float> a, std::span<const float> b, double max_val = 1.0);
double psnr(const Image& a, const Image& b, double max_val = 1.0);

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;

// Mean SSIM over every 11x11 Gaussian-weighted window (sigma 1.5, K1 0.01,
// K2 0.03, L 1) of a single plane.
double ssim_plane(std::span<const double> a, std::span<const double> b, int height, int width);

// SSIM of the Rec. 601 luminance planes.
double ssim(const Image& a, const Image& b);

std::vector<double> luminance(const Image& image);

struct MetricPair {
  double psnr_db = 0.0;
  double ssim = 0.0;
};

MetricPair compare(const Image& restored, const Image& clean);

struct EvalRow {
  std::string image_id;
  std::string method;
  std::string regime;
  double psnr_db = std::numeric_limits<double>::quiet_NaN();
  double ssim = std::numeric_limits<double>::quiet_NaN();
  std::string error;  // empty on success
};

struct EvalAggregate {
  std::string method;
  std::string regime;
  std::string dataset;
  double mean_psnr = std::numeric_limits<double>::quiet_NaN();
  double mean_ssim = std::numeric_limits<double>::quiet_NaN();
  std::size_t rows = 0;
  std::size_t infinite_psnr = 0;  // excluded from mean_psnr
  std::size_t failed = 0;         // excluded from both means
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::vector<EvalAggregate> aggregates;
};

// Means over the rows matching (method, regime), summed in image-id order so
// the result does not depend on row order.
EvalAggregate aggregate(std::span<const EvalRow> rows, const std::string& method, const std::string& regime,
                        const std::string& dataset = "");

struct EvalPair {
  std::string id;
  const Image& restored;
  const Image& clean;
};

EvalReport evaluate_dataset(std::span<const EvalPair> pairs, const std::string& method,
                            const std::string& regime, const std::string& dataset = "");

std::string format_metric(double v);

// Header image_id,method,regime,psnr_db,ssim (plus ",errors" when
// `with_errors`). Aggregates follow as `__mean__` rows; an `__inf_count__` row
// carrying the count in the psnr_db column is added when any PSNR was
// infinite.
void write_csv(const EvalReport& report, std::ostream& out, bool with_errors = false);

}  // namespace splicepaint
