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
#include <limits>
#include <sstream>

#include "splicepaint/metrics.hpp"
#include "splicepaint/rng.hpp"

namespace splicepaint {
namespace {

Image random_image(int h, int w, std::uint64_t seed) {
  Image img(h, w);
  Rng rng(seed);
  for (float& v : img.data()) v = static_cast<float>(rng.uniform());
  return img;
}

double oracle_psnr(const Image& a, const Image& b, double peak = 1.0) {
  long double se = 0;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      for (int c = 0; c < 3; ++c) {
        const long double d = static_cast<long double>(a.at(y, x, c)) - b.at(y, x, c);
        se += d * d;
      }
  const long double mse = se / (3.0L * a.height() * a.width());
  return static_cast<double>(10.0L * std::log10(static_cast<long double>(peak) * peak / mse));
}

// Every window evaluated directly with a full 2D Gaussian.
double oracle_ssim(const Image& a, const Image& b) {
  auto luma = [](const Image& im, int y, int x) {
    return 0.299 * im.at(y, x, 0) + 0.587 * im.at(y, x, 1) + 0.114 * im.at(y, x, 2);
  };
  double w2[11][11], wsum = 0;
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j) {
      w2[i][j] = std::exp(-((i - 5) * (i - 5) + (j - 5) * (j - 5)) / (2 * 1.5 * 1.5));
      wsum += w2[i][j];
    }
  const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  double total = 0;
  int windows = 0;
  for (int y0 = 0; y0 + 11 <= a.height(); ++y0)
    for (int x0 = 0; x0 + 11 <= a.width(); ++x0) {
      double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
      for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
          const double w = w2[i][j] / wsum;
          const double pa = luma(a, y0 + i, x0 + j), pb = luma(b, y0 + i, x0 + j);
          ma += w * pa;
          mb += w * pb;
          saa += w * pa * pa;
          sbb += w * pb * pb;
          sab += w * pa * pb;
        }
      const double va = saa - ma * ma, vb = sbb - mb * mb, cov = sab - ma * mb;
      total += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++windows;
    }
  return total / windows;
}

TEST(Psnr, UniformOffsetGivesTwentyDecibels) {
  Image a(8, 8, 0.3f), b(8, 8);
  for (std::size_t i = 0; i < b.data().size(); ++i) b.data()[i] = a.data()[i] + 0.1f;
  // float rounding of 0.3 + 0.1 perturbs the difference in the 8th digit.
  EXPECT_NEAR(psnr(a, b), 20.0, 1e-5);
  const std::vector<float> x(30, 0.5f), y(30, 0.4f);
  EXPECT_NEAR(psnr(x, y), 20.0, 1e-5);
}

TEST(Psnr, IdenticalIsInfinite) {
  const Image a = random_image(9, 7, 1);
  EXPECT_EQ(psnr(a, a), std::numeric_limits<double>::infinity());
}

TEST(Psnr, MatchesOracleOnRandomPairs) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Image a = random_image(32, 32, 2 * s), b = random_image(32, 32, 2 * s + 1);
    EXPECT_NEAR(psnr(a, b), oracle_psnr(a, b), 1e-9);
    EXPECT_EQ(psnr(a, b), psnr(b, a));
  }
}

TEST(Psnr, ScaleConsistent) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Image a = random_image(16, 16, 100 + s), b = random_image(16, 16, 200 + s);
    std::vector<float> a255(a.data().begin(), a.data().end()), b255(b.data().begin(), b.data().end());
    for (float& v : a255) v *= 255.0f;
    for (float& v : b255) v *= 255.0f;
    EXPECT_NEAR(psnr(a, b, 1.0), psnr(a255, b255, 255.0), 1e-5);
  }
}

TEST(Psnr, RejectsBadInput) {
  EXPECT_THROW(psnr(Image(4, 4), Image(4, 5)), std::invalid_argument);
  EXPECT_THROW(psnr(Image(4, 4), Image(4, 4, 0.5f), 0.0), std::invalid_argument);
}

TEST(Ssim, IdenticalIsExactlyOne) {
  const Image a = random_image(32, 40, 3);
  EXPECT_EQ(ssim(a, a), 1.0);
  EXPECT_EQ(ssim(Image(16, 16, 0.5f), Image(16, 16, 0.5f)), 1.0);
}

TEST(Ssim, MatchesWindowOracleOnRandomPairs) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Image a = random_image(32, 32, 50 + 2 * s), b = random_image(32, 32, 51 + 2 * s);
    EXPECT_NEAR(ssim(a, b), oracle_ssim(a, b), 1e-6) << "seed " << s;
  }
}

TEST(Ssim, MatchesOracleOnCorrelatedPairs) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Image a = random_image(24, 30, 300 + s);
    Image b = a;
    Rng rng(400 + s);
    for (float& v : b.data()) v = std::clamp(v + static_cast<float>(rng.uniform(-0.1, 0.1)), 0.0f, 1.0f);
    const double got = ssim(a, b);
    EXPECT_NEAR(got, oracle_ssim(a, b), 1e-6);
    EXPECT_GT(got, 0.5);
    EXPECT_LT(got, 1.0);
  }
}

TEST(Ssim, SymmetricAndBounded) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Image a = random_image(20, 20, 500 + s), b = random_image(20, 20, 600 + s);
    EXPECT_EQ(ssim(a, b), ssim(b, a));
    EXPECT_GE(ssim(a, b), -1.0);
    EXPECT_LE(ssim(a, b), 1.0);
  }
  Image black(16, 16, 0.0f), white(16, 16, 1.0f);
  EXPECT_GE(ssim(black, white), -1.0);
  EXPECT_LT(ssim(black, white), 0.01);
}

TEST(Ssim, RejectsSmallOrMismatched) {
  EXPECT_THROW(ssim(Image(10, 20), Image(10, 20)), std::invalid_argument);
  EXPECT_THROW(ssim(Image(20, 10), Image(20, 10)), std::invalid_argument);
  EXPECT_THROW(ssim(Image(20, 20), Image(20, 21)), std::invalid_argument);
  EXPECT_NO_THROW(ssim(Image(11, 11), Image(11, 11)));
}

TEST(Luminance, Rec601Weights) {
  const Image px(1, 1, {0.2f, 0.4f, 0.6f});
  EXPECT_NEAR(luminance(px)[0], 0.299 * 0.2f + 0.587 * 0.4f + 0.114 * 0.6f, 1e-12);
}

EvalRow row(std::string id, double p, double s) { return EvalRow{std::move(id), "m", "r", p, s, ""}; }

TEST(Aggregate, MeansAndSingleRow) {
  std::vector<EvalRow> one{row("a", 20, 0.5)};
  const auto agg1 = aggregate(one, "m", "r");
  EXPECT_EQ(agg1.mean_psnr, 20.0);
  EXPECT_EQ(agg1.mean_ssim, 0.5);
  EXPECT_EQ(agg1.rows, 1u);
  std::vector<EvalRow> two{row("a", 20, 0.5), row("b", 30, 0.7)};
  const auto agg2 = aggregate(two, "m", "r");
  EXPECT_EQ(agg2.mean_psnr, 25.0);
  EXPECT_NEAR(agg2.mean_ssim, 0.6, 1e-15);
}

TEST(Aggregate, PermutationInvariant) {
  std::vector<EvalRow> rows;
  Rng rng(8);
  for (int i = 0; i < 24; ++i) rows.push_back(row("img" + std::to_string(i), rng.uniform(10, 50), rng.uniform()));
  const auto base = aggregate(rows, "m", "r");
  for (int k = 0; k < 10; ++k) {
    for (std::size_t i = rows.size() - 1; i > 0; --i)
      std::swap(rows[i], rows[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)))]);
    const auto again = aggregate(rows, "m", "r");
    EXPECT_EQ(again.mean_psnr, base.mean_psnr);
    EXPECT_EQ(again.mean_ssim, base.mean_ssim);
  }
}

TEST(Aggregate, InfiniteAndFailedRowsAreExcluded) {
  std::vector<EvalRow> rows{row("a", 20, 0.5), row("b", std::numeric_limits<double>::infinity(), 1.0),
                            row("c", 30, 0.7)};
  EvalRow failed = row("d", std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
  failed.error = "boom";
  rows.push_back(failed);
  const auto agg = aggregate(rows, "m", "r");
  EXPECT_EQ(agg.mean_psnr, 25.0);
  EXPECT_NEAR(agg.mean_ssim, (0.5 + 1.0 + 0.7) / 3, 1e-15);
  EXPECT_EQ(agg.infinite_psnr, 1u);
  EXPECT_EQ(agg.failed, 1u);
  EXPECT_EQ(agg.rows, 4u);
}

TEST(EvaluateDataset, TwentyFourImages) {
  std::vector<Image> clean, restored;
  for (std::uint64_t i = 0; i < 24; ++i) {
    clean.push_back(random_image(16, 16, 700 + i));
    restored.push_back(random_image(16, 16, 800 + i));
  }
  std::vector<EvalPair> pairs;
  for (std::size_t i = 0; i < 24; ++i) pairs.push_back({"kodim" + std::to_string(i + 1), restored[i], clean[i]});
  const EvalReport r = evaluate_dataset(pairs, "interp-simplified", "thick", "kodak");
  ASSERT_EQ(r.rows.size(), 24u);
  ASSERT_EQ(r.aggregates.size(), 1u);
  double sp = 0;
  for (const auto& rw : r.rows) sp += rw.psnr_db;
  EXPECT_NEAR(r.aggregates[0].mean_psnr, sp / 24, 1e-12);
  EXPECT_EQ(r.aggregates[0].dataset, "kodak");
  EXPECT_EQ(r.rows[3].psnr_db, psnr(restored[3], clean[3]));
  EXPECT_EQ(r.rows[3].ssim, ssim(restored[3], clean[3]));
}

TEST(EvaluateDataset, RejectsEmptyAndDuplicates) {
  EXPECT_THROW(evaluate_dataset({}, "m", "r"), std::invalid_argument);
  const Image a = random_image(12, 12, 1);
  std::vector<EvalPair> dup{{"x", a, a}, {"x", a, a}};
  EXPECT_THROW(evaluate_dataset(dup, "m", "r"), std::invalid_argument);
  const Image b(12, 13);
  std::vector<EvalPair> bad{{"x", a, b}};
  EXPECT_THROW(evaluate_dataset(bad, "m", "r"), std::invalid_argument);
}

TEST(Csv, LayoutAndSentinels) {
  const Image a = random_image(12, 12, 1), b = random_image(12, 12, 2);
  std::vector<EvalPair> pairs{{"b", a, b}, {"a", a, a}};
  const EvalReport r = evaluate_dataset(pairs, "ours", "thick", "set");
  std::ostringstream out;
  write_csv(r, out);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("image_id,method,regime,psnr_db,ssim\n", 0), 0u);
  EXPECT_NE(text.find("\na,ours,thick,inf,1.000000\n"), std::string::npos) << text;
  EXPECT_NE(text.find("__mean__,ours,thick," + format_metric(psnr(a, b)) + ","), std::string::npos) << text;
  EXPECT_NE(text.find("__inf_count__,ours,thick,1,"), std::string::npos) << text;
  EXPECT_EQ(format_metric(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_metric(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_metric(20.0), "20.000000");
  std::ostringstream with_errors;
  write_csv(r, with_errors, true);
  EXPECT_EQ(with_errors.str().rfind("image_id,method,regime,psnr_db,ssim,errors\n", 0), 0u);
}

}  // namespace
}  // namespace splicepaint
