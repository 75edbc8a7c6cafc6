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
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "splicepaint/adam.hpp"
#include "splicepaint/image.hpp"
#include "splicepaint/mask.hpp"
#include "splicepaint/network.hpp"

namespace splicepaint {

struct EpochStats {
  int epoch = 0;  // 1-based
  double loss = 0.0;
  double val_psnr = std::numeric_limits<double>::quiet_NaN();
  double val_ssim = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
};

struct TrainStats {
  std::vector<EpochStats> epochs;
};

struct TrainOptions {
  int epochs = 100;
  int batch_size = 64;
  AdamConfig optimizer;
  AugmentConfig augment;
  MaskRegime regime = MaskRegime::variable();
  float fill = 1.0f;
  // Average the loss over damaged pixels only.
  bool masked_loss = false;
  std::uint64_t seed = 0;
  // Validate after every n-th epoch and after the last one; 0 disables.
  int validate_every = 1;
  std::function<void(const EpochStats&)> on_epoch;

  void validate() const;
};

// Training failed on a non-finite loss.
class TrainingDiverged : public NumericalError {
 public:
  TrainingDiverged(int epoch, std::size_t batch, const std::string& what)
      : NumericalError(what), epoch_(epoch), batch_(batch) {}
  int epoch() const { return epoch_; }
  std::size_t batch() const { return batch_; }

 private:
  int epoch_;
  std::size_t batch_;
};

// One training draw: the augmented clean image, its mask, and the corrupted
// network input.
struct Sample {
  Image clean;
  Mask mask;
  Image corrupted;
};

Sample make_sample(const Image& image, const TrainOptions& options, std::uint64_t sample_seed);

// Fixed validation mask for image `index`; identical across epochs.
Mask validation_mask(int height, int width, const MaskRegime& regime, std::uint64_t seed, std::size_t index);

// Mean composited PSNR (infinite values excluded) and SSIM over `images`,
// each corrupted with its validation mask.
std::pair<double, double> evaluate_composited(const Network& net, std::span<const Image> images,
                                              const TrainOptions& options);

// Mini-batch Adam on whole-image MSE against the clean image. Each epoch
// reshuffles the set and draws a fresh augmentation and mask per sample.
// Deterministic in (network, data order, options) apart from the timing
// column.
TrainStats train(Network& net, std::span<const Image> train_set, std::span<const Image> val_set,
                 const TrainOptions& options);

}  // namespace splicepaint
