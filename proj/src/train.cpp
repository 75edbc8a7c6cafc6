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

#include "splicepaint/train.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "splicepaint/composite.hpp"
#include "splicepaint/dataset.hpp"
#include "splicepaint/metrics.hpp"
#include "splicepaint/rng.hpp"

namespace splicepaint {

void TrainOptions::validate() const {
  if (epochs < 0) throw std::invalid_argument(fmt::format("train: epochs must be >= 0, got {}", epochs));
  if (batch_size < 1) throw std::invalid_argument(fmt::format("train: batch_size must be >= 1, got {}", batch_size));
  if (!(fill >= 0.0f && fill <= 1.0f)) throw std::invalid_argument(fmt::format("train: fill {} not in [0,1]", fill));
  if (validate_every < 0) throw std::invalid_argument("train: validate_every must be >= 0");
  optimizer.validate();
  augment.validate();
  regime.validate();
}

Sample make_sample(const Image& image, const TrainOptions& options, std::uint64_t sample_seed) {
  Sample s;
  s.clean = augment(image, options.augment, sample_seed);
  s.mask = generate_mask(s.clean.height(), s.clean.width(), options.regime, derive_seed({sample_seed, 0x6d61736b}));
  s.corrupted = apply_mask(s.clean, s.mask, options.fill);
  return s;
}

Mask validation_mask(int height, int width, const MaskRegime& regime, std::uint64_t seed, std::size_t index) {
  return generate_mask(height, width, regime, derive_seed({seed, 0x76616c, index}));
}

std::pair<double, double> evaluate_composited(const Network& net, std::span<const Image> images,
                                              const TrainOptions& options) {
  std::vector<Image> restored;
  restored.reserve(images.size());
  std::vector<EvalPair> pairs;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Mask m = validation_mask(images[i].height(), images[i].width(), options.regime, options.seed, i);
    const Image corrupted = apply_mask(images[i], m, options.fill);
    restored.push_back(composite(corrupted, predict(net, corrupted, m), m));
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    pairs.push_back({fmt::format("{:06}", i), restored[i], images[i]});
  const EvalAggregate agg = evaluate_dataset(pairs, "val", std::string(options.regime.name())).aggregates.front();
  return {agg.mean_psnr, agg.mean_ssim};
}

TrainStats train(Network& net, std::span<const Image> train_set, std::span<const Image> val_set,
                 const TrainOptions& options) {
  options.validate();
  if (train_set.empty()) throw std::invalid_argument("train: empty training set");
  const NetworkConfig& cfg = net.config();
  for (const Image& img : train_set) {
    if (img.height() != cfg.input_height || img.width() != cfg.input_width)
      throw std::invalid_argument(fmt::format("train: image is {}x{}, network expects {}x{}", img.height(),
                                              img.width(), cfg.input_height, cfg.input_width));
  }

  std::vector<AdamState<float>> states;
  states.reserve(net.params().size());
  for (const auto& p : net.params()) states.emplace_back(p.value.shape(), options.optimizer);

  TrainStats stats;
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    const auto batches = make_batches(train_set.size(), static_cast<std::size_t>(options.batch_size),
                                      static_cast<std::uint64_t>(epoch), options.seed);
    double loss_sum = 0;
    std::size_t seen = 0;
    for (std::size_t b = 0; b < batches.size(); ++b) {
      std::vector<Image> clean, corrupted;
      std::vector<Mask> masks;
      for (const BatchItem& item : batches[b]) {
        Sample s = make_sample(train_set[item.index], options, item.sample_seed);
        clean.push_back(std::move(s.clean));
        masks.push_back(std::move(s.mask));
        corrupted.push_back(std::move(s.corrupted));
      }

      Graph<float> g;
      std::vector<Var> leaves;
      leaves.reserve(net.params().size());
      for (const auto& p : net.params()) leaves.push_back(g.leaf(p.value, true));
      const Var input = g.leaf(network_input(cfg, corrupted, masks), false);
      const Var target = g.leaf(to_planar(clean), false);
      const Var pred = record_forward(g, cfg, leaves, input);
      Var loss;
      if (options.masked_loss) {
        Tensor<float> weight(g.value(pred).shape());
        for (std::size_t n = 0; n < masks.size(); ++n)
          for (std::size_t c = 0; c < 3; ++c)
            for (int y = 0; y < cfg.input_height; ++y)
              for (int x = 0; x < cfg.input_width; ++x)
                weight.at(n, c, static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = masks[n].at(y, x);
        loss = g.weighted_mse(pred, target, weight);
      } else {
        loss = g.mse(pred, target);
      }
      const double value = g.value(loss)[0];
      if (!std::isfinite(value)) {
        throw TrainingDiverged(epoch, b, fmt::format("non-finite loss at epoch {}, batch {}", epoch, b));
      }
      g.backward(loss);
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        try {
          adam_step(net.params()[i].value, g.grad(leaves[i]), states[i], net.params()[i].name);
        } catch (const NumericalError& e) {
          throw TrainingDiverged(epoch, b, fmt::format("epoch {}, batch {}: {}", epoch, b, e.what()));
        }
      }
      loss_sum += value * static_cast<double>(batches[b].size());
      seen += batches[b].size();
    }

    EpochStats row;
    row.epoch = epoch;
    row.loss = loss_sum / static_cast<double>(seen);
    const bool validate_now = options.validate_every > 0 && !val_set.empty() &&
                              (epoch % options.validate_every == 0 || epoch == options.epochs);
    if (validate_now) std::tie(row.val_psnr, row.val_ssim) = evaluate_composited(net, val_set, options);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    stats.epochs.push_back(row);
    if (options.on_epoch) options.on_epoch(row);
  }
  return stats;
}

}  // namespace splicepaint
