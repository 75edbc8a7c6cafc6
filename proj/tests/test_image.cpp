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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "splicepaint/image.hpp"
#include "splicepaint/image_io.hpp"
#include "splicepaint/rng.hpp"

namespace splicepaint {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "splicepaint_image_test";
  fs::create_directories(d);
  return d;
}

Image random_image(int h, int w, std::uint64_t seed) {
  Image img(h, w);
  Rng rng(seed);
  for (float& v : img.data()) v = static_cast<float>(rng.uniform());
  return img;
}

// Random image whose values are exact byte levels.
Image byte_image(int h, int w, std::uint64_t seed) {
  Image img(h, w);
  Rng rng(seed);
  for (float& v : img.data()) v = static_cast<float>(rng.uniform_int(0, 255)) / 255.0f;
  return img;
}

std::vector<float> sorted_values(const Image& img) {
  std::vector<float> v(img.data().begin(), img.data().end());
  std::sort(v.begin(), v.end());
  return v;
}

// Centre-aligned bilinear sampling, one output pixel at a time.
float bilinear_oracle(const Image& src, int oh, int ow, int y, int x, int c) {
  auto coord = [](int dst, int out_n, int in_n) {
    const double s = (dst + 0.5) * static_cast<double>(in_n) / out_n - 0.5;
    return std::clamp(s, 0.0, static_cast<double>(in_n - 1));
  };
  const double sy = coord(y, oh, src.height()), sx = coord(x, ow, src.width());
  const int y0 = static_cast<int>(std::floor(sy)), x0 = static_cast<int>(std::floor(sx));
  const int y1 = std::min(y0 + 1, src.height() - 1), x1 = std::min(x0 + 1, src.width() - 1);
  const double fy = sy - y0, fx = sx - x0;
  const double top = src.at(y0, x0, c) * (1 - fx) + src.at(y0, x1, c) * fx;
  const double bot = src.at(y1, x0, c) * (1 - fx) + src.at(y1, x1, c) * fx;
  return static_cast<float>(top * (1 - fy) + bot * fy);
}

TEST(Resize, SameSizeIsIdentity) {
  const Image img = random_image(7, 9, 1);
  EXPECT_EQ(resize(img, 7, 9), img);
}

TEST(Resize, ConstantStaysConstant) {
  const Image out = resize(Image(2, 2, 0.3f), 4, 4);
  for (float v : out.data()) EXPECT_FLOAT_EQ(v, 0.3f);
}

TEST(Resize, RampMatchesBilinearOracle) {
  Image ramp(4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x)
      for (int c = 0; c < 3; ++c) ramp.at(y, x, c) = static_cast<float>(x) / 3.0f;
  const Image out = resize(ramp, 2, 2);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x)
      for (int c = 0; c < 3; ++c) EXPECT_NEAR(out.at(y, x, c), bilinear_oracle(ramp, 2, 2, y, x, c), 1e-6);
  EXPECT_NEAR(out.at(0, 0, 0), 0.5f / 3.0f, 1e-6);
}

TEST(Resize, RandomShapesMatchOracle) {
  const Image img = random_image(13, 10, 2);
  for (auto [h, w] : {std::pair{5, 7}, {26, 20}, {13, 3}, {1, 1}, {32, 9}}) {
    const Image out = resize(img, h, w);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        for (int c = 0; c < 3; ++c) ASSERT_NEAR(out.at(y, x, c), bilinear_oracle(img, h, w, y, x, c), 1e-6);
    EXPECT_TRUE(out.in_unit_range());
  }
  EXPECT_THROW(resize(img, 0, 4), std::invalid_argument);
  EXPECT_THROW(resize(img, 4, -1), std::invalid_argument);
}

TEST(Augment, FlipsAndRotationsArePermutations) {
  const Image img = random_image(6, 6, 3);
  EXPECT_EQ(flip(flip(img, Flip::kHorizontal), Flip::kHorizontal), img);
  EXPECT_EQ(flip(flip(img, Flip::kVertical), Flip::kVertical), img);
  EXPECT_EQ(rotate(rotate(img, 180), 180), img);
  EXPECT_EQ(rotate(rotate(rotate(rotate(img, 90), 90), 90), 90), img);
  EXPECT_EQ(rotate(img, 270), rotate(rotate(rotate(img, 90), 90), 90));
  EXPECT_EQ(rotate(img, 0), img);
  for (int deg : {90, 180, 270}) EXPECT_EQ(sorted_values(rotate(img, deg)), sorted_values(img));
  EXPECT_EQ(sorted_values(flip(img, Flip::kVertical)), sorted_values(img));
  EXPECT_THROW(rotate(img, 45), std::invalid_argument);
}

TEST(Augment, RotationDirectionIsClockwise) {
  Image img(2, 3);
  img.at(0, 0, 0) = 1.0f;  // top-left
  const Image r = rotate(img, 90);
  ASSERT_EQ(r.height(), 3);
  ASSERT_EQ(r.width(), 2);
  EXPECT_EQ(r.at(0, 1, 0), 1.0f);  // moves to top-right
  EXPECT_EQ(flip(img, Flip::kHorizontal).at(0, 2, 0), 1.0f);
  EXPECT_EQ(flip(img, Flip::kVertical).at(1, 0, 0), 1.0f);
}

TEST(Augment, DeterministicAndValuePreserving) {
  const Image img = random_image(8, 8, 4);
  const AugmentConfig cfg;
  int changed = 0;
  for (std::uint64_t s = 0; s < 64; ++s) {
    const Image a = augment(img, cfg, s);
    EXPECT_EQ(a, augment(img, cfg, s));
    EXPECT_EQ(sorted_values(a), sorted_values(img));
    changed += a != img;
  }
  EXPECT_GT(changed, 32);
  EXPECT_LT(changed, 64);
  EXPECT_EQ(augment(img, AugmentConfig{0.0, 0.0}, 9), img);
}

TEST(Augment, ForcedFlipIsInvolution) {
  const Image img = random_image(8, 8, 5);
  const AugmentConfig always_flip{1.0, 0.0};
  for (std::uint64_t s = 0; s < 16; ++s) {
    const Image once = augment(img, always_flip, s);
    EXPECT_NE(once, img);
    const bool horizontal = once == flip(img, Flip::kHorizontal);
    EXPECT_TRUE(horizontal || once == flip(img, Flip::kVertical));
    EXPECT_EQ(augment(once, always_flip, s), img);
  }
  EXPECT_THROW((AugmentConfig{1.5, 0.0}.validate()), std::invalid_argument);
}

TEST(Planar, RoundTrip) {
  std::vector<Image> imgs{random_image(4, 5, 6), random_image(4, 5, 7)};
  const Tensor<float> t = to_planar(imgs);
  EXPECT_EQ(t.shape(), (Shape{2, 3, 4, 5}));
  EXPECT_EQ(t.at(1, 2, 3, 4), imgs[1].at(3, 4, 2));
  EXPECT_EQ(from_planar(t, 0), imgs[0]);
  EXPECT_EQ(from_planar(t, 1), imgs[1]);
}

TEST(ImageIo, ByteMapping) {
  const fs::path p = scratch_dir() / "levels.png";
  Image img(1, 2, {1.0f, 0.0f, 0.5f, 0.0f, 1.0f, 0.25f});
  save_image(img, p);
  const Image back = load_image(p);
  std::vector<std::uint8_t> bytes;
  for (float v : back.data()) bytes.push_back(static_cast<std::uint8_t>(std::lround(v * 255.0f)));
  EXPECT_EQ(bytes, (std::vector<std::uint8_t>{255, 0, 128, 0, 255, 64}));
  EXPECT_EQ(quantize_unit(0.5f), 128);
  EXPECT_EQ(quantize_unit(1.0f), 255);
  EXPECT_EQ(quantize_unit(0.0f), 0);
  EXPECT_EQ(quantize_unit(-0.2f), 0);
  EXPECT_EQ(quantize_unit(1.7f), 255);
  EXPECT_EQ(load_image(p).at(0, 0, 0), 1.0f);
  EXPECT_EQ(load_image(p).at(0, 0, 1), 0.0f);
}

TEST(ImageIo, PngAndPpmRoundTripsAreExact) {
  const Image img = byte_image(17, 23, 8);
  for (const char* name : {"rt.png", "rt.ppm"}) {
    const fs::path p = scratch_dir() / name;
    save_image(img, p);
    EXPECT_EQ(load_image(p), img) << name;
  }
  // A second save of the loaded image yields identical bytes.
  const fs::path a = scratch_dir() / "a.png", b = scratch_dir() / "b.png";
  save_image(img, a);
  save_image(load_image(a), b);
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
  EXPECT_EQ(sa, sb);
}

TEST(ImageIo, FixtureLoads) {
  const Image img = load_image(SPLICEPAINT_FIXTURES "/natural_224.png");
  EXPECT_EQ(img.height(), 224);
  EXPECT_EQ(img.width(), 224);
  EXPECT_TRUE(img.in_unit_range());
}

TEST(ImageIo, DistinctErrors) {
  const fs::path junk = scratch_dir() / "junk.png";
  std::ofstream(junk, std::ios::binary) << "definitely not an image";
  try {
    load_image(junk);
    FAIL();
  } catch (const ImageIoError& e) {
    EXPECT_EQ(e.kind(), ImageIoError::Kind::kUnsupportedFormat);
  }

  const Image img = byte_image(16, 16, 9);
  for (const char* name : {"cut.png", "cut.ppm"}) {
    const fs::path p = scratch_dir() / name;
    save_image(img, p);
    fs::resize_file(p, fs::file_size(p) / 2);
    try {
      load_image(p);
      FAIL() << name;
    } catch (const ImageIoError& e) {
      EXPECT_EQ(e.kind(), ImageIoError::Kind::kTruncated) << name << ": " << e.what();
    }
  }
  try {
    load_image(scratch_dir() / "does_not_exist.png");
    FAIL();
  } catch (const ImageIoError& e) {
    EXPECT_EQ(e.kind(), ImageIoError::Kind::kIo);
  }
}

TEST(ImageIo, GrayThresholdForMasks) {
  const fs::path p = scratch_dir() / "gray.png";
  save_gray8(Gray8{1, 4, {0, 127, 128, 255}}, p);
  const Gray8 g = load_gray8(p);
  EXPECT_EQ(g.pixels, (std::vector<std::uint8_t>{0, 127, 128, 255}));
}

}  // namespace
}  // namespace splicepaint
