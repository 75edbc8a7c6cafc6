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

// Command-line front end: mask generation, training, inference and the
// paired benchmark against the interpolation baseline.
//
// Exit codes: 0 success, 1 benchmark finished with per-image failures,
// 2 usage or configuration error, 3 numerical failure during training.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "splicepaint/bench.hpp"
#include "splicepaint/checkpoint.hpp"
#include "splicepaint/composite.hpp"
#include "splicepaint/config.hpp"
#include "splicepaint/dataset.hpp"
#include "splicepaint/image_io.hpp"
#include "splicepaint/mask.hpp"
#include "splicepaint/metrics.hpp"
#include "splicepaint/network.hpp"
#include "splicepaint/rng.hpp"
#include "splicepaint/train.hpp"

namespace fs = std::filesystem;
using namespace splicepaint;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

MaskRegime named_regime(const RunConfig& rc, const std::string& name) {
  if (!regime_from_name(name)) throw UsageError(fmt::format("invalid regime '{}' (use narrow, variable or thick)", name));
  return rc.regime(name);
}

RunConfig optional_config(const std::string& path) { return path.empty() ? RunConfig{} : load_run_config(path); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

struct MaskgenArgs {
  int height = 224, width = 224, count = 1;
  std::string regime = "variable", config;
  std::uint64_t seed = 0;
  std::string out;
};

int run_maskgen(const MaskgenArgs& a) {
  const RunConfig rc = optional_config(a.config);
  const MaskRegime regime = named_regime(rc, a.regime);
  if (a.count < 0) throw UsageError("--count must be >= 0");
  fs::create_directories(a.out);
  std::string csv = "file,coverage\n";
  for (int i = 0; i < a.count; ++i) {
    const Mask m = generate_mask(a.height, a.width, regime, derive_seed({a.seed, static_cast<std::uint64_t>(i)}));
    const std::string name = fmt::format("mask_{}_{:04}.png", a.seed, i);
    save_mask(m, fs::path(a.out) / name);
    csv += fmt::format("{},{:.6f}\n", name, mask_coverage(m));
  }
  write_text(fs::path(a.out) / "coverage.csv", csv);
  return kExitOk;
}

struct TrainArgs {
  std::string config, data, val, out, stats;
  int epochs = -1;
};

int run_train(const TrainArgs& a) {
  RunConfig rc = load_run_config(a.config);
  if (a.epochs >= 0) rc.training.epochs = a.epochs;
  const NetworkConfig& nc = rc.network;
  const auto train_images = load_images(read_manifest(a.data, Split::kTrain), nc.input_height, nc.input_width);
  std::vector<Image> val_images;
  if (!a.val.empty()) val_images = load_images(read_manifest(a.val, Split::kVal), nc.input_height, nc.input_width);

  const fs::path stats_path = a.stats.empty() ? fs::path(a.out).parent_path() / "train_stats.csv" : fs::path(a.stats);
  Network net = build_network(nc);
  rc.training.on_epoch = [&](const EpochStats& e) {
    std::cerr << fmt::format("epoch {:4d}  loss {:.6f}  val_psnr {}  val_ssim {}  {:.2f}s\n", e.epoch, e.loss,
                             format_metric(e.val_psnr), format_metric(e.val_ssim), e.seconds);
  };
  const TrainStats stats = train(net, train_images, val_images, rc.training);

  std::string csv = "epoch,loss,val_psnr,val_ssim,seconds\n";
  for (const EpochStats& e : stats.epochs)
    csv += fmt::format("{},{:.9g},{},{},{:.3f}\n", e.epoch, e.loss, format_metric(e.val_psnr),
                       format_metric(e.val_ssim), e.seconds);
  save_checkpoint(net, a.out);
  write_text(stats_path, csv);
  return kExitOk;
}

struct InferArgs {
  std::string ckpt, image, mask, out;
  bool raw = false;
  float fill = 1.0f;
};

int run_infer(const InferArgs& a) {
  const Network net = load_checkpoint(a.ckpt);
  const Image image = load_image(a.image);
  const Mask mask = load_mask(a.mask);
  const NetworkConfig& c = net.config();
  if (image.height() != c.input_height || image.width() != c.input_width || mask.height() != c.input_height ||
      mask.width() != c.input_width) {
    throw UsageError(fmt::format("image is {}x{} and mask is {}x{}, but the checkpoint expects {}x{}", image.height(),
                                 image.width(), mask.height(), mask.width(), c.input_height, c.input_width));
  }
  const Image corrupted = apply_mask(image, mask, a.fill);
  const Image raw = predict(net, corrupted, mask);
  save_image(a.raw ? raw : composite(corrupted, raw, mask), a.out);
  return kExitOk;
}

struct BenchArgs {
  std::string ckpt, data, report, config;
  std::string regimes = "narrow,variable,thick";
  std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& a) {
  const RunConfig rc = optional_config(a.config);
  BenchOptions opts;
  opts.regimes.clear();
  for (const std::string& name : split_list(a.regimes)) opts.regimes.push_back(named_regime(rc, name));
  if (opts.regimes.empty()) throw UsageError("--regimes must name at least one regime");
  opts.baseline = rc.baseline;
  opts.fill = rc.training.fill;
  opts.seed = a.seed;

  const Network net = load_checkpoint(a.ckpt);
  const Manifest manifest = read_manifest(a.data, Split::kTest);
  std::vector<BenchImage> images;
  for (const auto& p : manifest.paths)
    images.push_back({image_id(p), resize(load_image(p), net.config().input_height, net.config().input_width)});

  const BenchResult result = run_benchmark(net, images, opts);
  std::ostringstream csv;
  write_csv(result.report, csv, true);
  write_text(a.report, csv.str());
  for (const EvalAggregate& agg : result.report.aggregates)
    std::cerr << fmt::format("{:>18} {:>9}  psnr {}  ssim {}\n", agg.method, agg.regime, format_metric(agg.mean_psnr),
                             format_metric(agg.mean_ssim));
  if (result.failures > 0) {
    std::cerr << fmt::format("{} image evaluations failed\n", result.failures);
    return kExitPartial;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"splicepaint: encoder-decoder inpainting with guided pixel selection"};
  app.require_subcommand(1);

  MaskgenArgs mg;
  auto* maskgen = app.add_subcommand("maskgen", "Generate random scratch masks");
  maskgen->add_option("--height", mg.height, "Mask height")->capture_default_str();
  maskgen->add_option("--width", mg.width, "Mask width")->capture_default_str();
  maskgen->add_option("--regime", mg.regime, "narrow, variable or thick")->capture_default_str();
  maskgen->add_option("--count", mg.count, "Number of masks")->capture_default_str();
  maskgen->add_option("--seed", mg.seed, "Random seed")->capture_default_str();
  maskgen->add_option("--config", mg.config, "Run config with regime overrides");
  maskgen->add_option("--out", mg.out, "Output directory")->required();

  TrainArgs tr;
  auto* trainc = app.add_subcommand("train", "Train the network");
  trainc->add_option("--config", tr.config, "Run config (JSON)")->required();
  trainc->add_option("--data", tr.data, "Training manifest")->required();
  trainc->add_option("--val", tr.val, "Validation manifest");
  trainc->add_option("--out", tr.out, "Checkpoint path")->required();
  trainc->add_option("--epochs", tr.epochs, "Override the configured epoch count");
  trainc->add_option("--stats", tr.stats, "Stats CSV path (default: train_stats.csv next to the checkpoint)");

  InferArgs inf;
  auto* infer = app.add_subcommand("infer", "Restore one image");
  infer->add_option("--ckpt", inf.ckpt, "Checkpoint")->required();
  infer->add_option("--image", inf.image, "Input image")->required();
  infer->add_option("--mask", inf.mask, "Mask PNG (255 = damaged)")->required();
  infer->add_option("--out", inf.out, "Output image")->required();
  infer->add_flag("--raw", inf.raw, "Write the unspliced network output");
  infer->add_option("--fill", inf.fill, "Value written into damaged pixels")->capture_default_str();

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Compare the network with the interpolation baseline");
  bench->add_option("--ckpt", bn.ckpt, "Checkpoint")->required();
  bench->add_option("--data", bn.data, "Test manifest")->required();
  bench->add_option("--regimes", bn.regimes, "Comma-separated regimes")->capture_default_str();
  bench->add_option("--seed", bn.seed, "Mask seed")->capture_default_str();
  bench->add_option("--report", bn.report, "Report CSV")->required();
  bench->add_option("--config", bn.config, "Run config with regime/baseline overrides");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*maskgen) return run_maskgen(mg);
    if (*trainc) return run_train(tr);
    if (*infer) return run_infer(inf);
    if (*bench) return run_bench(bn);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
